// Copyright 2026 The telepovm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "telepovm/povm.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "telepovm/errors.hpp"

namespace telepovm {

namespace {

constexpr double kNegligibleProbability = 1e-12;

ComplexMatrix sum_of(std::span<const ComplexMatrix> ms) {
  ComplexMatrix total(ms.front().rows(), ms.front().cols());
  for (const ComplexMatrix& m : ms) total = total + m;
  return total;
}

std::vector<std::string> numbered_labels(std::size_t n, const char* prefix) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(prefix + std::to_string(i + 1));
  }
  return out;
}

void require_unit(Complex alpha, Complex beta) {
  const double n2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(n2 - 1.0) > Tolerance::kDefault) {
    throw ValidationError("(alpha, beta) must satisfy |alpha|^2 + |beta|^2 = 1");
  }
}

MeasurementOutcome collapse(const ComplexMatrix& kraus, std::size_t index,
                            std::string label, double probability,
                            const DensityMatrix& rho) {
  const ComplexMatrix post =
      Complex{1.0 / probability} * (kraus * rho.matrix() * kraus.adjoint());
  return MeasurementOutcome{index, std::move(label), probability,
                            DensityMatrix(post)};
}

}  // namespace

Povm::Povm(std::vector<ComplexMatrix> elements, std::vector<std::string> labels,
           Tolerance tol)
    : elements_(std::move(elements)), labels_(std::move(labels)) {
  if (elements_.empty()) throw ValidationError("POVM needs at least one element");
  if (labels_.size() != elements_.size()) {
    throw ValidationError("POVM needs exactly one label per element");
  }
  if (std::set<std::string>(labels_.begin(), labels_.end()).size() !=
      labels_.size()) {
    throw ValidationError("POVM labels must be unique");
  }
  const std::size_t n = elements_.front().rows();
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const ComplexMatrix& a = elements_[i];
    if (!a.is_square() || a.rows() != n) {
      throw DimensionError("POVM elements must share one square dimension");
    }
    if (!is_psd(a, tol)) {
      throw ValidationError("POVM element " + labels_[i] + " is not PSD");
    }
  }
  const double residual = completeness_residual(elements_);
  if (residual > tol.eps()) {
    throw ValidationError(
        "POVM elements do not sum to identity (residual " +
        std::to_string(residual) + ")");
  }
}

double completeness_residual(std::span<const ComplexMatrix> elements) {
  if (elements.empty()) throw ValidationError("no elements");
  const ComplexMatrix total = sum_of(elements);
  if (!total.is_square()) throw DimensionError("elements are not square");
  return max_abs_diff(total, ComplexMatrix::identity(total.rows()));
}

double min_eigenvalue(std::span<const ComplexMatrix> elements) {
  double least = std::numeric_limits<double>::infinity();
  for (const ComplexMatrix& a : elements) {
    least = std::min(least, eigh(a).values.front());
  }
  return least;
}

KrausSet::KrausSet(std::vector<ComplexMatrix> operators, Tolerance tol)
    : operators_(std::move(operators)) {
  if (operators_.empty()) throw ValidationError("empty Kraus set");
  const std::size_t n = operators_.front().cols();
  effects_.reserve(operators_.size());
  for (const ComplexMatrix& m : operators_) {
    if (m.cols() != n) {
      throw DimensionError("Kraus operators must share an input dimension");
    }
    effects_.push_back(m.adjoint() * m);
  }
  const double residual = completeness_residual(effects_);
  if (residual > tol.eps()) {
    throw ValidationError(
        "Kraus operators are not complete (residual " +
        std::to_string(residual) + ")");
  }
}

Povm teleportation_povm(Complex alpha, Complex beta) {
  require_unit(alpha, beta);
  const Complex aa = std::norm(alpha);
  const Complex bb = std::norm(beta);
  const Complex ba = beta * std::conj(alpha);  // beta alpha*
  const Complex ab = std::conj(beta) * alpha;  // beta* alpha
  const Complex h = 0.5;
  return Povm(
      {
          h * ComplexMatrix{{aa, ba}, {ab, bb}},
          h * ComplexMatrix{{bb, -ab}, {-ba, aa}},
          h * ComplexMatrix{{bb, ab}, {ba, aa}},
          h * ComplexMatrix{{aa, -ba}, {-ab, bb}},
      },
      {"A1", "A2", "A3", "A4"});
}

DiscriminationPovm discrimination_povm(const SchmidtPair& s) {
  const double a = s.a();
  const double b = s.b();
  if (a < b) {
    throw ValidationError("discrimination_povm requires a >= b");
  }
  if (b == 0.0) {
    return DiscriminationPovm{
        Povm({ComplexMatrix::diagonal({1.0, 0.0}),
              ComplexMatrix::diagonal({0.0, 1.0})},
             {"A3", "A3'"}),
        {Verdict::Inconclusive, Verdict::Inconclusive},
        true};
  }
  const Complex k = 1.0 / (2.0 * a * a);
  const Complex bb = b * b;
  const Complex ab = a * b;
  const Complex aa = a * a;
  return DiscriminationPovm{
      Povm({k * ComplexMatrix{{bb, ab}, {ab, aa}},
            k * ComplexMatrix{{bb, -ab}, {-ab, aa}},
            ComplexMatrix::diagonal({1.0 - (b * b) / (a * a), 0.0})},
           {"A1", "A2", "A3"}),
      {Verdict::First, Verdict::Second, Verdict::Inconclusive},
      false};
}

std::vector<ComplexMatrix> unnormalized_discrimination_elements(
    const SchmidtPair& s) {
  const double a = s.a();
  const double b = s.b();
  if (!(a > 0.0)) throw ValidationError("a must be positive");
  const Complex bb = b * b;
  const Complex ab = b * a;
  const Complex aa = a * a;
  return {ComplexMatrix{{bb, ab}, {ab, aa}},
          ComplexMatrix{{bb, -ab}, {-ab, aa}},
          ComplexMatrix::diagonal({1.0 - (b * b) / (a * a), 0.0})};
}

Povm induced_povm(std::span<const ComplexMatrix> projectors,
                  const DensityMatrix& rho_aux,
                  std::vector<std::string> labels) {
  const Tolerance tol;
  if (projectors.empty()) throw ValidationError("no projectors given");
  const std::size_t total = projectors.front().rows();
  const std::size_t d_aux = rho_aux.dim();
  for (const ComplexMatrix& p : projectors) {
    if (!p.is_square() || p.rows() != total) {
      throw DimensionError("projectors must share one square dimension");
    }
  }
  if (total % d_aux != 0) {
    throw DimensionError("projector dimension is not a multiple of ancilla's");
  }
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    const ComplexMatrix& p = projectors[i];
    if (!is_hermitian(p, tol) || max_abs_diff(p * p, p) > tol.eps()) {
      throw ValidationError("projector " + std::to_string(i) +
                            " is not an orthogonal projector");
    }
    for (std::size_t j = i + 1; j < projectors.size(); ++j) {
      if (max_abs(p * projectors[j]) > tol.eps()) {
        throw ValidationError("projectors are not mutually orthogonal");
      }
    }
  }
  if (completeness_residual(projectors) > tol.eps()) {
    throw ValidationError("projectors do not sum to identity");
  }

  const std::size_t d_sys = total / d_aux;
  const ComplexMatrix& rho = rho_aux.matrix();
  std::vector<ComplexMatrix> elements;
  elements.reserve(projectors.size());
  for (const ComplexMatrix& p : projectors) {
    std::vector<Complex> e(d_sys * d_sys);
    for (std::size_t m = 0; m < d_sys; ++m) {
      for (std::size_t n = 0; n < d_sys; ++n) {
        Complex acc = 0.0;
        for (std::size_t r = 0; r < d_aux; ++r) {
          for (std::size_t s = 0; s < d_aux; ++s) {
            acc += p(m * d_aux + r, n * d_aux + s) * rho(s, r);
          }
        }
        e[m * d_sys + n] = acc;
      }
    }
    elements.emplace_back(d_sys, d_sys, std::move(e));
  }
  if (labels.empty()) labels = numbered_labels(elements.size(), "A");
  return Povm(std::move(elements), std::move(labels));
}

std::vector<ComplexMatrix> telepovm_bell_projectors() {
  return {bell_state(BellLabel::PhiPlus).projector(),
          bell_state(BellLabel::PsiMinus).projector(),
          bell_state(BellLabel::PsiPlus).projector(),
          bell_state(BellLabel::PhiMinus).projector()};
}

KrausSet kraus_from_povm(const Povm& p) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(p.size());
  for (const ComplexMatrix& a : p.elements()) ops.push_back(sqrt_psd(a));
  return KrausSet(std::move(ops));
}

KrausSet filter_pair(const ComplexMatrix& v1) {
  if (!v1.is_square()) throw DimensionError("filter must be square");
  const ComplexMatrix vvd = v1 * v1.adjoint();
  const double largest = eigh(vvd).values.back();
  constexpr double kMaxSingular = 1.0 + 1e-12;
  if (largest > kMaxSingular * kMaxSingular) {
    throw ValidationError("filter has a singular value above 1");
  }
  if (max_abs_diff(v1.adjoint() * v1, vvd) > Tolerance::kDefault) {
    throw ValidationError("filter is not normal; {V1, sqrt(I - V1 V1^†)} "
                          "would not be complete");
  }
  const ComplexMatrix v2 = sqrt_psd(ComplexMatrix::identity(v1.rows()) - vvd);
  return KrausSet({v1, v2});
}

std::vector<double> outcome_probabilities(
    std::span<const ComplexMatrix> effects, const DensityMatrix& rho) {
  std::vector<double> probs;
  probs.reserve(effects.size());
  for (const ComplexMatrix& e : effects) {
    if (e.rows() != rho.dim() || e.cols() != rho.dim()) {
      throw DimensionError("effect and state dimensions differ");
    }
    probs.push_back(
        std::clamp(trace_of_product(e, rho.matrix()).real(), 0.0, 1.0));
  }
  return probs;
}

std::size_t sample_index(std::span<const double> probabilities, double draw) {
  double total = 0.0;
  for (double p : probabilities) total += std::max(p, 0.0);
  if (!(total > kNegligibleProbability)) {
    throw std::logic_error("every outcome has negligible probability");
  }
  const double target = std::clamp(draw, 0.0, 1.0) * total;
  double cum = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] <= 0.0) continue;
    last_positive = i;
    cum += probabilities[i];
    if (target < cum) return i;
  }
  return last_positive;
}

MeasurementOutcome measure(const Povm& p, const DensityMatrix& rho,
                           double draw) {
  const std::vector<double> probs = outcome_probabilities(p.elements(), rho);
  const std::size_t i = sample_index(probs, draw);
  return collapse(sqrt_psd(p.element(i)), i, p.label(i), probs[i], rho);
}

MeasurementOutcome measure(const KrausSet& k, const DensityMatrix& rho,
                           double draw) {
  const std::vector<double> probs = outcome_probabilities(k.effects(), rho);
  const std::size_t i = sample_index(probs, draw);
  return collapse(k.op(i), i, "K" + std::to_string(i), probs[i], rho);
}

}  // namespace telepovm
