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

#include <string>
#include <vector>

#include "telepovm/linalg.hpp"
#include "telepovm/povm.hpp"
#include "telepovm/states.hpp"

namespace telepovm {

struct EnsembleMember {
  double probability;
  PureState state;
};

/// Pure states with prior probabilities; realizes sum p_i |psi_i><psi_i|.
class Ensemble {
 public:
  explicit Ensemble(std::vector<EnsembleMember> members, Tolerance tol = {});

  const std::vector<EnsembleMember>& members() const { return members_; }
  std::size_t dim() const { return members_.front().state.dim(); }

 private:
  std::vector<EnsembleMember> members_;
};

DensityMatrix ensemble_density(const Ensemble& e);

/// The four I/2-ensembles: rectilinear, diagonal, the union of both (BB84)
/// and the telePOVM ensemble {(a,b), (a,-b), (b,a), (b,-a)}.
enum class NamedEnsemble { E1, E2, E3, E4 };

/// alpha and beta are only read for E4, where they must be normalized.
Ensemble canonical_ensemble(
    NamedEnsemble name, Complex alpha = 1.0, Complex beta = 0.0);

struct SteeringBranch {
  std::string label;
  double probability;
  /// Canonical phase (first nonzero amplitude real positive). Meaningless
  /// when `defined` is false.
  PureState bob_state;
  /// False for branches whose probability is below 1e-12.
  bool defined;
};

struct SteeringResult {
  std::vector<SteeringBranch> branches;
};

/**
 * Bob's ensemble after Alice measures `alice_povm` on her half of `shared`
 * (Alice high-order). Branch i has probability Tr[(A_i (x) I) |S><S|]; its
 * state is the normalized conditional state of Bob.
 *
 * Throws DimensionError if the POVM dimension does not divide the shared
 * dimension, ValidationError if a conditional state is not pure (an element
 * of rank above one acting on an entangled state).
 */
SteeringResult steer(const PureState& shared, const Povm& alice_povm);

/// sum p_i |bob_i><bob_i| over defined branches.
ComplexMatrix steered_density(const SteeringResult& r);

/// Alice's projective measurements in the rectilinear and diagonal bases.
Povm rectilinear_povm();
Povm diagonal_povm();

enum class B92Basis {
  /// Alice measures in the diagonal basis; Bob holds a|0> +- b|1>.
  Diagonal,
  /// As Diagonal, followed by a Hadamard on Bob's side, giving
  /// (a+b, a-b)/sqrt2 and (a-b, a+b)/sqrt2.
  HadamardRotated,
};

/**
 * Two-branch ensemble for the B92 key-distribution scheme from a shared
 * a|00> + b|11>. Both branches have probability 1/2 and the Bob states
 * overlap by |a^2 - b^2|.
 */
SteeringResult b92_generation(
    const SchmidtPair& s, B92Basis basis = B92Basis::Diagonal);

}  // namespace telepovm
