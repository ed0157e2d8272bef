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

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "telepovm/linalg.hpp"

namespace telepovm {

/**
 * Normalized state vector. Two-qubit amplitudes are ordered |00>, |01>,
 * |10>, |11> with the first label on the high-order subsystem.
 *
 * Equality of physical states is up to global phase; use
 * `equal_up_to_phase` rather than comparing amplitudes.
 */
class PureState {
 public:
  /// Throws ValidationError unless sum |amp|^2 = 1 within tol.
  explicit PureState(std::vector<Complex> amplitudes, Tolerance tol = {});
  PureState(std::initializer_list<Complex> amplitudes);

  /// Rescales a nonzero vector to unit norm.
  static PureState normalized(std::vector<Complex> amplitudes);
  static PureState basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amplitudes_.size(); }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }

  /// <this|other>
  Complex inner(const PureState& other) const;
  bool equal_up_to_phase(const PureState& other, Tolerance tol = {}) const;
  /// Same ray with the first nonzero amplitude real and positive.
  PureState canonical_phase() const;

  ComplexMatrix ket() const { return ComplexMatrix::column(amplitudes_); }
  ComplexMatrix projector() const;

 private:
  std::vector<Complex> amplitudes_;
};

PureState tensor(const PureState& high, const PureState& low);

/// Hermitian, unit-trace, positive semidefinite operator.
class DensityMatrix {
 public:
  /// Throws ValidationError if any of the three properties fails at tol.
  explicit DensityMatrix(ComplexMatrix m, Tolerance tol = {});

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(std::size_t dim);

  std::size_t dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  /// Tr(rho^2).
  double purity() const;

 private:
  ComplexMatrix matrix_;
};

/// Schmidt coefficients of a two-qubit state a|00> + b|11>.
class SchmidtPair {
 public:
  /// a, b >= 0 with a^2 + b^2 = 1 within tol. Ordering is not enforced.
  SchmidtPair(double a, double b, Tolerance tol = {});
  /// a = sqrt(a2), b = sqrt(1 - a2); a2 in [0, 1].
  static SchmidtPair from_a2(double a2);

  double a() const { return a_; }
  double b() const { return b_; }

 private:
  double a_;
  double b_;
};

enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellLabel, 4> kBellLabels = {
    BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus,
    BellLabel::PsiMinus};

std::string_view to_string(BellLabel label);

PureState bell_state(BellLabel label);

/// a|00> + b|11>.
PureState partially_entangled(const SchmidtPair& s);

/// Descending singular values of the 2x2 amplitude matrix of a dim-4 state.
SchmidtPair schmidt_coeffs(const PureState& psi);

/// <psi|rho|psi>.
double fidelity(const PureState& target, const DensityMatrix& rho);
/// |<target|psi>|^2.
double fidelity(const PureState& target, const PureState& psi);

/// p |Psi-><Psi-| + (1 - p) |00><00| for p in (0, 1).
DensityMatrix mixed_resource(double p);

}  // namespace telepovm
