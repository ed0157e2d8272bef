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

#include "telepovm/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "telepovm/errors.hpp"

namespace telepovm {

namespace {

double squared_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return s;
}

}  // namespace

PureState::PureState(std::vector<Complex> amplitudes, Tolerance tol)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw DimensionError("empty state vector");
  for (const Complex& z : amplitudes_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ValidationError("state amplitudes must be finite");
    }
  }
  const double n2 = squared_norm(amplitudes_);
  if (std::abs(n2 - 1.0) > tol.eps()) {
    throw ValidationError(
        "state is not normalized (norm^2 = " + std::to_string(n2) + ")");
  }
}

PureState::PureState(std::initializer_list<Complex> amplitudes)
    : PureState(std::vector<Complex>(amplitudes)) {}

PureState PureState::normalized(std::vector<Complex> amplitudes) {
  const double n = std::sqrt(squared_norm(amplitudes));
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw ValidationError("cannot normalize a zero or non-finite vector");
  }
  for (Complex& z : amplitudes) z /= n;
  return PureState(std::move(amplitudes));
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionError("basis index out of range");
  std::vector<Complex> v(dim);
  v[index] = 1.0;
  return PureState(std::move(v));
}

Complex PureState::inner(const PureState& other) const {
  if (dim() != other.dim()) throw DimensionError("inner: dimension mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    s += std::conj(amplitudes_[i]) * other.amplitudes_[i];
  }
  return s;
}

bool PureState::equal_up_to_phase(const PureState& other, Tolerance tol) const {
  if (dim() != other.dim()) return false;
  return std::abs(std::abs(inner(other)) - 1.0) <= tol.eps();
}

PureState PureState::canonical_phase() const {
  constexpr double kNegligible = 1e-12;
  for (const Complex& z : amplitudes_) {
    if (std::abs(z) > kNegligible) {
      const Complex phase = std::conj(z) / std::abs(z);
      std::vector<Complex> out(amplitudes_);
      for (Complex& w : out) w *= phase;
      return PureState::normalized(std::move(out));
    }
  }
  return *this;
}

ComplexMatrix PureState::projector() const {
  return ComplexMatrix::outer(amplitudes_, amplitudes_);
}

PureState tensor(const PureState& high, const PureState& low) {
  std::vector<Complex> v(high.dim() * low.dim());
  for (std::size_t i = 0; i < high.dim(); ++i) {
    for (std::size_t j = 0; j < low.dim(); ++j) {
      v[i * low.dim() + j] = high[i] * low[j];
    }
  }
  return PureState::normalized(std::move(v));
}

DensityMatrix::DensityMatrix(ComplexMatrix m, Tolerance tol)
    : matrix_(std::move(m)) {
  if (!matrix_.is_square()) {
    throw DimensionError("density matrix must be square");
  }
  if (!is_hermitian(matrix_, tol)) {
    throw ValidationError("density matrix is not Hermitian");
  }
  const Complex t = matrix_.trace();
  if (std::abs(t - Complex{1.0}) > tol.eps()) {
    throw ValidationError(
        "density matrix trace is " + std::to_string(t.real()) + ", not 1");
  }
  if (!is_psd(matrix_, tol)) {
    throw ValidationError("density matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.projector());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(Complex{1.0 / static_cast<double>(dim)} *
                       ComplexMatrix::identity(dim));
}

double DensityMatrix::purity() const {
  return trace_of_product(matrix_, matrix_).real();
}

SchmidtPair::SchmidtPair(double a, double b, Tolerance tol) : a_(a), b_(b) {
  if (!(a >= 0.0) || !(b >= 0.0)) {
    throw ValidationError("Schmidt coefficients must be non-negative");
  }
  if (std::abs(a * a + b * b - 1.0) > tol.eps()) {
    throw ValidationError("Schmidt coefficients must satisfy a^2 + b^2 = 1");
  }
}

SchmidtPair SchmidtPair::from_a2(double a2) {
  if (!(a2 >= 0.0 && a2 <= 1.0)) {
    throw ValidationError("a^2 must lie in [0, 1]");
  }
  return SchmidtPair(std::sqrt(a2), std::sqrt(1.0 - a2));
}

std::string_view to_string(BellLabel label) {
  switch (label) {
    case BellLabel::PhiPlus:
      return "Phi+";
    case BellLabel::PhiMinus:
      return "Phi-";
    case BellLabel::PsiPlus:
      return "Psi+";
    case BellLabel::PsiMinus:
      return "Psi-";
  }
  return "?";
}

PureState bell_state(BellLabel label) {
  const double h = 1.0 / std::sqrt(2.0);
  switch (label) {
    case BellLabel::PhiPlus:
      return PureState{h, 0.0, 0.0, h};
    case BellLabel::PhiMinus:
      return PureState{h, 0.0, 0.0, -h};
    case BellLabel::PsiPlus:
      return PureState{0.0, h, h, 0.0};
    case BellLabel::PsiMinus:
      return PureState{0.0, h, -h, 0.0};
  }
  throw ValidationError("unknown Bell label");
}

PureState partially_entangled(const SchmidtPair& s) {
  return PureState{s.a(), 0.0, 0.0, s.b()};
}

SchmidtPair schmidt_coeffs(const PureState& psi) {
  if (psi.dim() != 4) {
    throw DimensionError("schmidt_coeffs needs a two-qubit (dim 4) state");
  }
  const ComplexMatrix amp(2, 2, {psi[0], psi[1], psi[2], psi[3]});
  const HermitianEigen eig = eigh(amp * amp.adjoint());
  // Singular values are the roots of the eigenvalues of M M^†.
  const double small = std::sqrt(std::max(eig.values[0], 0.0));
  const double large = std::sqrt(std::max(eig.values[1], 0.0));
  const double n = std::hypot(large, small);
  return SchmidtPair(large / n, small / n);
}

double fidelity(const PureState& target, const DensityMatrix& rho) {
  if (target.dim() != rho.dim()) {
    throw DimensionError("fidelity: dimension mismatch");
  }
  const ComplexMatrix& m = rho.matrix();
  Complex f = 0.0;
  for (std::size_t i = 0; i < target.dim(); ++i) {
    for (std::size_t j = 0; j < target.dim(); ++j) {
      f += std::conj(target[i]) * m(i, j) * target[j];
    }
  }
  return f.real();
}

double fidelity(const PureState& target, const PureState& psi) {
  return std::norm(target.inner(psi));
}

DensityMatrix mixed_resource(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw ValidationError("mixed_resource: p must lie in (0, 1)");
  }
  const ComplexMatrix singlet = bell_state(BellLabel::PsiMinus).projector();
  const ComplexMatrix zero = PureState::basis(4, 0).projector();
  return DensityMatrix(Complex{p} * singlet + Complex{1.0 - p} * zero);
}

}  // namespace telepovm
