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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "telepovm/linalg.hpp"
#include "telepovm/povm.hpp"
#include "telepovm/states.hpp"

namespace telepovm {

// Three-qubit layout used throughout: particle 1 (the state to send) is the
// high-order qubit, particle 2 (Alice's half of the resource) is next and
// particle 3 (Bob) is the low-order qubit.

/// Bob's four rotations, in order [[0,1],[-1,0]], [[0,1],[1,0]],
/// [[-1,0],[0,1]], I.
const std::array<ComplexMatrix, 4>& correction_rotations();

/// Bell outcome -> rotation Bob applies. Always a permutation of
/// `correction_rotations()`.
class CorrectionTable {
 public:
  /// Rotations that undo the Bell-measurement kick for a resource in the
  /// given Bell state. For Psi- this is the textbook assignment
  /// Phi+, Phi-, Psi+, Psi- -> rotations 0, 1, 2, 3.
  static CorrectionTable for_bell_resource(BellLabel resource);
  /// Table of the Bell state closest to `resource` (ties resolved in
  /// Phi+, Phi-, Psi+, Psi- order).
  static CorrectionTable for_resource(const PureState& resource);

  const ComplexMatrix& at(BellLabel outcome) const {
    return rotations_[static_cast<std::size_t>(outcome)];
  }

 private:
  explicit CorrectionTable(std::array<ComplexMatrix, 4> rotations)
      : rotations_(std::move(rotations)) {}
  std::array<ComplexMatrix, 4> rotations_;
};

using BobState = std::variant<PureState, DensityMatrix>;

double fidelity(const PureState& target, const BobState& state);

/// One branch of a protocol run.
struct ProtocolRecord {
  std::string outcome_label;
  double probability;
  BobState bob_state_pre;
  std::optional<ComplexMatrix> correction;
  BobState bob_state_post;
  double fidelity;
  /// Alice reports success and Bob keeps the state.
  bool success;
  /// Bits Alice sends Bob for this branch.
  int classical_bits;
};

/// Branch index drawn by inverse CDF over record probabilities.
std::size_t sample_branch(std::span<const ProtocolRecord> records, double draw);

/// Teleports `phi` through a two-qubit pure `resource` with a Bell
/// measurement on particles 1 and 2. Four records in Phi+, Phi-, Psi+, Psi-
/// order; corrections from `CorrectionTable::for_resource(resource)`.
std::vector<ProtocolRecord> standard_teleport(
    const PureState& phi, const PureState& resource);

/**
 * Teleports the low-order qubit of `joint` (dimension 2k); the remaining
 * k-dimensional reference system is untouched. Bob states and fidelities
 * refer to the reference (x) Bob system compared against `joint`.
 */
std::vector<ProtocolRecord> teleport_entangled(
    const PureState& joint, const PureState& resource);

/// Standard teleportation through a mixed two-qubit resource.
std::vector<ProtocolRecord> teleport_mixed(
    const PureState& phi, const DensityMatrix& resource,
    const CorrectionTable& table);

/// Standard teleportation through a|00> + b|11>.
std::vector<ProtocolRecord> naive_partial_teleport(
    const PureState& phi, const SchmidtPair& s);

/// (|alpha|^2 a^2 + |beta|^2 b^2) / 2
double naive_phi_plus_probability(const PureState& phi, const SchmidtPair& s);
/// (|alpha|^2 a + |beta|^2 b)^2 / (|alpha|^2 a^2 + |beta|^2 b^2)
double naive_phi_plus_fidelity(const PureState& phi, const SchmidtPair& s);

/// Two-dimensional blocks of particles 1,2 that each hold two Bell states.
enum class BellSubspace {
  Even,  // span{|00>, |11>}: Phi+, Phi-
  Odd,   // span{|01>, |10>}: Psi+, Psi-
};

/// Projector on particles 1,2 (4x4).
ComplexMatrix subspace_projector(BellSubspace subspace);

struct SubspaceOutcome {
  BellSubspace subspace;
  double probability;
  /// Normalized three-qubit state after the projection; empty when the
  /// subspace has probability below 1e-12.
  std::optional<PureState> post_state;
  /// The two Bell states spanning this subspace.
  std::array<BellLabel, 2> bell_labels;
  /// Conditional probabilities of a subsequent projective measurement onto
  /// `bell_labels`.
  std::array<double, 2> bell_conditional;
};

/// A Bell measurement split into a parity step and an in-subspace step.
struct TwoStepBell {
  std::array<SubspaceOutcome, 2> outcomes;  // Even, Odd

  /// stage-1 probability x stage-2 conditional, in Phi+, Phi-, Psi+, Psi-
  /// order.
  std::array<double, 4> joint_bell_probabilities() const;
};

TwoStepBell two_step_bell(const PureState& joint123);

/**
 * Conclusive teleportation through a|00> + b|11>, a >= b. After the parity
 * step Alice runs `discrimination_povm(s)` inside the selected subspace
 * (mirrored for the odd block, whose states are (b, a) and (b, -a)).
 * Conclusive outcomes are corrected and have fidelity one; inconclusive
 * outcomes are reported with success = false. Emits subspace x outcome
 * records labelled like "even:A1".
 *
 * Throws ValidationError if a < b.
 */
std::vector<ProtocolRecord> conclusive_teleport(
    const PureState& phi, const SchmidtPair& s);

/// `conclusive_teleport` with the measurement operators for one resource
/// built once, for repeated runs over many inputs.
class ConclusiveTeleporter {
 public:
  explicit ConclusiveTeleporter(const SchmidtPair& s);

  std::vector<ProtocolRecord> run(const PureState& phi) const;

 private:
  struct Branch {
    std::string label;
    ComplexMatrix op;  // on particles 1,2,3
    std::optional<ComplexMatrix> correction;
    bool conclusive;
    int classical_bits;
  };
  PureState resource_;
  std::vector<Branch> branches_;
};

/// 1 - (a^2 - b^2).
double conclusive_success_probability(const SchmidtPair& s);

/// Strength of the local filter diag(lambda, 1) with lambda = 1/sqrt(n).
class FilterParams {
 public:
  /// n >= 1.
  static FilterParams from_n(double n);
  /// lambda in (0, 1].
  static FilterParams from_lambda(double lambda);

  double n() const { return n_; }
  double lambda() const { return lambda_; }

 private:
  FilterParams(double n, double lambda) : n_(n), lambda_(lambda) {}
  double n_;
  double lambda_;
};

struct FilterOutcome {
  DensityMatrix post_state;
  double success_probability;
};

/**
 * Both parties apply V1 = W1 = diag(lambda, 1) and keep the pair only when
 * both filters pass: rho -> (V1 (x) W1) rho (V1 (x) W1)^† / Tr(...).
 */
FilterOutcome bilocal_filter(const DensityMatrix& rho, const FilterParams& fp);

/// Singlet weight after filtering mixed_resource(p): 1 / (1 + (1-p)/(n p)).
double filtered_singlet_fraction(double p, double n);
/// Probability both filters pass on mixed_resource(p): (1 + (n-1) p) / n^2.
double filter_success_probability(double p, double n);

/// Best teleportation fidelity from singlet fraction F: (2F + 1) / 3.
double max_teleport_fidelity(double singlet_fraction);

/**
 * Input-averaged fidelity of standard teleportation over `resource`,
 * computed exactly by averaging over the six Pauli eigenstates (a qubit
 * 3-design, so the average equals the uniform one).
 */
double average_teleport_fidelity(
    const DensityMatrix& resource, const CorrectionTable& table);

/// Least integer n with max_teleport_fidelity(filtered_singlet_fraction(p,
/// n)) >= 1 - epsilon. Throws CapabilityError if n would exceed 2^53.
std::uint64_t plan_filter_strength(double p, double epsilon);

struct QuasiConclusiveResult {
  FilterParams filter;
  /// p' of the filtered resource.
  double filtered_fraction;
  /// Teleportation branches for `phi`, conditional on the filter passing.
  std::vector<ProtocolRecord> records;
  /// Probability both filters pass.
  double success_probability;
  /// Input-averaged fidelity of the filtered channel (exact).
  double average_fidelity;
  /// (2 p' + 1) / 3.
  double fidelity_bound;
};

/**
 * Filters mixed_resource(p) with the smallest integer n whose averaged
 * teleportation fidelity reaches 1 - epsilon, then teleports `phi` through
 * the filtered pair with the singlet corrections.
 */
QuasiConclusiveResult quasi_conclusive_teleport(
    const PureState& phi, double p, double epsilon);

}  // namespace telepovm
