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

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "telepovm/linalg.hpp"
#include "telepovm/states.hpp"

namespace telepovm {

/**
 * Positive operator valued measure: labelled PSD elements summing to the
 * identity. Construction validates every invariant at the given tolerance.
 */
class Povm {
 public:
  Povm(std::vector<ComplexMatrix> elements, std::vector<std::string> labels,
       Tolerance tol = {});

  std::size_t size() const { return elements_.size(); }
  std::size_t dim() const { return elements_.front().rows(); }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  const ComplexMatrix& element(std::size_t i) const { return elements_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

 private:
  std::vector<ComplexMatrix> elements_;
  std::vector<std::string> labels_;
};

/// max |sum(elements) - I| entrywise. Elements must share a square shape.
double completeness_residual(std::span<const ComplexMatrix> elements);

/// Least eigenvalue over all elements.
double min_eigenvalue(std::span<const ComplexMatrix> elements);

/// Measurement operators M_i with sum M_i^† M_i = I.
class KrausSet {
 public:
  explicit KrausSet(std::vector<ComplexMatrix> operators, Tolerance tol = {});

  std::size_t size() const { return operators_.size(); }
  std::size_t dim() const { return operators_.front().cols(); }
  const std::vector<ComplexMatrix>& operators() const { return operators_; }
  const ComplexMatrix& op(std::size_t i) const { return operators_.at(i); }
  /// Effects M_i^† M_i, in operator order.
  const std::vector<ComplexMatrix>& effects() const { return effects_; }

 private:
  std::vector<ComplexMatrix> operators_;
  std::vector<ComplexMatrix> effects_;
};

/**
 * The four-outcome POVM that Alice's Bell measurement induces on her half
 * of a shared singlet when the ancilla holds (alpha, beta):
 *
 *   A1 = 1/2 [[|a|^2,  b a*], [ b* a, |b|^2]]
 *   A2 = 1/2 [[|b|^2, -b* a], [-b a*, |a|^2]]
 *   A3 = 1/2 [[|b|^2,  b* a], [ b a*, |a|^2]]
 *   A4 = 1/2 [[|a|^2, -b a*], [-b* a, |b|^2]]
 *
 * Throws ValidationError unless |alpha|^2 + |beta|^2 = 1 within 1e-9.
 */
Povm teleportation_povm(Complex alpha, Complex beta);

/// Role of an element of an unambiguous-discrimination POVM.
enum class Verdict { First, Second, Inconclusive };

struct DiscriminationPovm {
  Povm povm;
  std::vector<Verdict> verdicts;
  /// Set when b = 0: the two states coincide and every outcome is
  /// inconclusive.
  bool all_inconclusive = false;
};

/**
 * Unambiguous discrimination of (a, b) from (a, -b), a >= b:
 *
 *   A1 = 1/(2a^2) [[b^2,  ab], [ ab, a^2]]   never fires on (a, -b)
 *   A2 = 1/(2a^2) [[b^2, -ab], [-ab, a^2]]   never fires on (a, b)
 *   A3 = diag(1 - b^2/a^2, 0)               inconclusive
 *
 * The 1/(2a^2) factor is what makes the set complete; see
 * `unnormalized_discrimination_elements` for the matrices without it.
 * For b = 0 returns {diag(1,0), diag(0,1)}, both inconclusive.
 *
 * Throws ValidationError if a < b.
 */
DiscriminationPovm discrimination_povm(const SchmidtPair& s);

/// A1, A2, A3 above without the 1/(2a^2) normalization. These sum to
/// diag(2b^2 + 1 - b^2/a^2, 2a^2), which is I only at a^2 = 1/2.
std::vector<ComplexMatrix> unnormalized_discrimination_elements(
    const SchmidtPair& s);

/**
 * POVM on a system induced by attaching an ancilla in state `rho_aux` and
 * measuring a complete set of orthogonal projectors on system (x) ancilla
 * (system high-order):
 *
 *   (A_k)_{mn} = sum_{r,s} (P_k)_{mr,ns} (rho_aux)_{sr}
 *
 * Throws ValidationError for a projector set that is not Hermitian,
 * idempotent, mutually orthogonal and complete at 1e-9; DimensionError if
 * the projector size is not a multiple of the ancilla dimension.
 */
Povm induced_povm(std::span<const ComplexMatrix> projectors,
                  const DensityMatrix& rho_aux,
                  std::vector<std::string> labels = {});

/// Projectors onto Phi+, Psi-, Psi+, Phi- (the order in which the induced
/// POVM reproduces A1..A4 of `teleportation_povm`).
std::vector<ComplexMatrix> telepovm_bell_projectors();

/// M_i = sqrt(A_i).
KrausSet kraus_from_povm(const Povm& p);

/**
 * {V1, sqrt(I - V1 V1^†)}. V1 must be square with largest singular value at
 * most 1 + 1e-12 and normal (V1^† V1 = V1 V1^†), otherwise the pair is not
 * a complete Kraus set.
 */
KrausSet filter_pair(const ComplexMatrix& v1);

struct MeasurementOutcome {
  std::size_t index;
  std::string label;
  double probability;
  DensityMatrix post_state;
};

/// Tr(E_i rho) for every element, clamped to [0, 1].
std::vector<double> outcome_probabilities(
    std::span<const ComplexMatrix> effects, const DensityMatrix& rho);

/**
 * Samples one outcome by inverse CDF over p_i = Tr(A_i rho) using the caller
 * supplied `draw` in [0, 1). The post-measurement state is
 * M_i rho M_i^† / p_i with M_i = sqrt(A_i).
 */
MeasurementOutcome measure(const Povm& p, const DensityMatrix& rho,
                           double draw);

/// Same for an explicit Kraus set; outcome labels are "K0", "K1", ...
MeasurementOutcome measure(const KrausSet& k, const DensityMatrix& rho,
                           double draw);

/// Index picked by inverse CDF; outcomes with zero weight are never picked.
std::size_t sample_index(std::span<const double> probabilities, double draw);

}  // namespace telepovm
