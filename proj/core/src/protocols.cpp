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

#include "telepovm/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "telepovm/errors.hpp"

namespace telepovm {

namespace {

constexpr double kNegligibleProbability = 1e-12;

PureState placeholder(std::size_t dim) { return PureState::basis(dim, 0); }

ComplexMatrix apply(const ComplexMatrix& op, const ComplexMatrix& rho) {
  return op * rho * op.adjoint();
}

/// Bob's unnormalized state when Alice finds `bell` on particles 1,2 of a
/// three-qubit vector (optionally behind a high-order reference of size
/// `ref`). Result has dimension 2 * ref.
std::vector<Complex> project_bell(
    std::span<const Complex> state, std::size_t ref, const PureState& bell) {
  std::vector<Complex> out(2 * ref);
  for (std::size_t r = 0; r < ref; ++r) {
    for (std::size_t xy = 0; xy < 4; ++xy) {
      const Complex c = std::conj(bell[xy]);
      if (c == Complex{}) continue;
      for (std::size_t j = 0; j < 2; ++j) {
        out[r * 2 + j] += c * state[r * 8 + xy * 2 + j];
      }
    }
  }
  return out;
}

double squared_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return s;
}

/// Bob's (3rd qubit) reduced state of an unnormalized three-qubit vector,
/// returned pure when it is pure.
BobState bob_reduced(std::span<const Complex> v, double norm2) {
  const ComplexMatrix rho = partial_trace(
      Complex{1.0 / norm2} * ComplexMatrix::outer(v, v), {4, 2}, Subsystem::A);
  const HermitianEigen eig = eigh(rho);
  if (eig.values.back() >= 1.0 - Tolerance::kDefault) {
    return PureState::normalized({eig.vectors(0, 1), eig.vectors(1, 1)})
        .canonical_phase();
  }
  return DensityMatrix(rho);
}

BobState rotate(const BobState& s, const ComplexMatrix& u) {
  if (const auto* psi = std::get_if<PureState>(&s)) {
    const ComplexMatrix out = u * psi->ket();
    return PureState::normalized({out.entries().begin(), out.entries().end()});
  }
  return DensityMatrix(apply(u, std::get<DensityMatrix>(s).matrix()));
}

std::size_t index_of(BellLabel b) { return static_cast<std::size_t>(b); }

void require_qubit(const PureState& phi) {
  if (phi.dim() != 2) throw DimensionError("expected a single-qubit state");
}

/// The six Pauli eigenstates.
std::array<PureState, 6> octahedron() {
  const double h = 1.0 / std::sqrt(2.0);
  const Complex i{0.0, h};
  return {PureState{1.0, 0.0}, PureState{0.0, 1.0}, PureState{h, h},
          PureState{h, -h},    PureState{h, i},     PureState{h, -i}};
}

/// <B| (x) I as a 2 x 8 operator on particles 1,2,3.
ComplexMatrix bell_bra_on_three(const PureState& bell) {
  std::vector<Complex> e(2 * 8);
  for (std::size_t xy = 0; xy < 4; ++xy) {
    for (std::size_t j = 0; j < 2; ++j) {
      e[j * 8 + xy * 2 + j] = std::conj(bell[xy]);
    }
  }
  return ComplexMatrix(2, 8, std::move(e));
}

}  // namespace

const std::array<ComplexMatrix, 4>& correction_rotations() {
  static const std::array<ComplexMatrix, 4> rotations = {
      ComplexMatrix{{0.0, 1.0}, {-1.0, 0.0}},
      ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}},
      ComplexMatrix{{-1.0, 0.0}, {0.0, 1.0}},
      ComplexMatrix::identity(2),
  };
  return rotations;
}

CorrectionTable CorrectionTable::for_bell_resource(BellLabel resource) {
  const PureState res = bell_state(resource);
  const auto& rotations = correction_rotations();
  std::array<ComplexMatrix, 4> chosen = rotations;
  for (BellLabel outcome : kBellLabels) {
    // Column j of `kick` is Bob's unnormalized state when the input is |j>.
    std::vector<Complex> cols[2];
    for (std::size_t j = 0; j < 2; ++j) {
      const PureState joint = tensor(PureState::basis(2, j), res);
      cols[j] = project_bell(joint.amplitudes(), 1, bell_state(outcome));
    }
    const ComplexMatrix kick{{cols[0][0], cols[1][0]}, {cols[0][1], cols[1][1]}};
    std::size_t best = 0;
    double best_score = -1.0;
    for (std::size_t c = 0; c < rotations.size(); ++c) {
      const double score = std::abs(trace_of_product(rotations[c], kick));
      if (score > best_score + 1e-12) {
        best = c;
        best_score = score;
      }
    }
    chosen[index_of(outcome)] = rotations[best];
  }
  return CorrectionTable(std::move(chosen));
}

CorrectionTable CorrectionTable::for_resource(const PureState& resource) {
  if (resource.dim() != 4) {
    throw DimensionError("resource must be a two-qubit state");
  }
  BellLabel nearest = BellLabel::PhiPlus;
  double best = -1.0;
  for (BellLabel b : kBellLabels) {
    const double overlap = std::abs(bell_state(b).inner(resource));
    if (overlap > best + 1e-12) {
      best = overlap;
      nearest = b;
    }
  }
  return for_bell_resource(nearest);
}

double fidelity(const PureState& target, const BobState& state) {
  return std::visit(
      [&](const auto& s) { return telepovm::fidelity(target, s); }, state);
}

std::size_t sample_branch(std::span<const ProtocolRecord> records, double draw) {
  std::vector<double> probs;
  probs.reserve(records.size());
  for (const ProtocolRecord& r : records) probs.push_back(r.probability);
  return sample_index(probs, draw);
}

std::vector<ProtocolRecord> teleport_entangled(
    const PureState& joint, const PureState& resource) {
  if (joint.dim() % 2 != 0) {
    throw DimensionError("teleported system must end in a qubit");
  }
  if (resource.dim() != 4) {
    throw DimensionError("resource must be a two-qubit state");
  }
  const std::size_t ref = joint.dim() / 2;
  const PureState full = tensor(joint, resource);
  const CorrectionTable table = CorrectionTable::for_resource(resource);
  const ComplexMatrix ref_identity = ComplexMatrix::identity(ref);

  std::vector<ProtocolRecord> records;
  records.reserve(4);
  for (BellLabel outcome : kBellLabels) {
    const std::vector<Complex> bob =
        project_bell(full.amplitudes(), ref, bell_state(outcome));
    const double p = squared_norm(bob);
    const ComplexMatrix& correction = table.at(outcome);
    if (p < kNegligibleProbability) {
      records.push_back({std::string(to_string(outcome)), 0.0,
                         placeholder(joint.dim()), correction,
                         placeholder(joint.dim()), 0.0, false, 2});
      continue;
    }
    const PureState pre = PureState::normalized(bob);
    const PureState post =
        std::get<PureState>(rotate(pre, kron(ref_identity, correction)));
    records.push_back({std::string(to_string(outcome)), p, pre, correction,
                       post, telepovm::fidelity(joint, post), true, 2});
  }
  return records;
}

std::vector<ProtocolRecord> standard_teleport(
    const PureState& phi, const PureState& resource) {
  require_qubit(phi);
  return teleport_entangled(phi, resource);
}

std::vector<ProtocolRecord> teleport_mixed(
    const PureState& phi, const DensityMatrix& resource,
    const CorrectionTable& table) {
  require_qubit(phi);
  if (resource.dim() != 4) {
    throw DimensionError("resource must be a two-qubit state");
  }
  const ComplexMatrix full = kron(phi.projector(), resource.matrix());
  std::vector<ProtocolRecord> records;
  records.reserve(4);
  for (BellLabel outcome : kBellLabels) {
    const ComplexMatrix bob = apply(bell_bra_on_three(bell_state(outcome)), full);
    const double p = bob.trace().real();
    const ComplexMatrix& correction = table.at(outcome);
    if (p < kNegligibleProbability) {
      const DensityMatrix none = DensityMatrix::from_pure(placeholder(2));
      records.push_back({std::string(to_string(outcome)), 0.0, none,
                         correction, none, 0.0, false, 2});
      continue;
    }
    const DensityMatrix pre(Complex{1.0 / p} * bob);
    const DensityMatrix post(apply(correction, pre.matrix()));
    records.push_back({std::string(to_string(outcome)), p, pre, correction,
                       post, telepovm::fidelity(phi, post), true, 2});
  }
  return records;
}

std::vector<ProtocolRecord> naive_partial_teleport(
    const PureState& phi, const SchmidtPair& s) {
  return standard_teleport(phi, partially_entangled(s));
}

double naive_phi_plus_probability(const PureState& phi, const SchmidtPair& s) {
  require_qubit(phi);
  const double a = s.a();
  const double b = s.b();
  return (std::norm(phi[0]) * a * a + std::norm(phi[1]) * b * b) / 2.0;
}

double naive_phi_plus_fidelity(const PureState& phi, const SchmidtPair& s) {
  require_qubit(phi);
  const double a = s.a();
  const double b = s.b();
  const double num = std::norm(phi[0]) * a + std::norm(phi[1]) * b;
  return num * num /
         (std::norm(phi[0]) * a * a + std::norm(phi[1]) * b * b);
}

ComplexMatrix subspace_projector(BellSubspace subspace) {
  return subspace == BellSubspace::Even
             ? ComplexMatrix::diagonal({1.0, 0.0, 0.0, 1.0})
             : ComplexMatrix::diagonal({0.0, 1.0, 1.0, 0.0});
}

std::array<double, 4> TwoStepBell::joint_bell_probabilities() const {
  std::array<double, 4> out{};
  for (const SubspaceOutcome& o : outcomes) {
    for (std::size_t k = 0; k < 2; ++k) {
      out[index_of(o.bell_labels[k])] = o.probability * o.bell_conditional[k];
    }
  }
  return out;
}

TwoStepBell two_step_bell(const PureState& joint123) {
  if (joint123.dim() != 8) {
    throw DimensionError("two_step_bell needs a three-qubit state");
  }
  const ComplexMatrix bob_identity = ComplexMatrix::identity(2);
  TwoStepBell result{};
  const std::array<BellSubspace, 2> subspaces = {BellSubspace::Even,
                                                 BellSubspace::Odd};
  for (std::size_t s = 0; s < 2; ++s) {
    const BellSubspace sub = subspaces[s];
    const std::array<BellLabel, 2> labels =
        sub == BellSubspace::Even
            ? std::array{BellLabel::PhiPlus, BellLabel::PhiMinus}
            : std::array{BellLabel::PsiPlus, BellLabel::PsiMinus};
    const ComplexMatrix projected =
        kron(subspace_projector(sub), bob_identity) * joint123.ket();
    const std::vector<Complex> v(projected.entries().begin(),
                                 projected.entries().end());
    const double p = squared_norm(v);
    SubspaceOutcome& out = result.outcomes[s];
    out.subspace = sub;
    out.bell_labels = labels;
    out.bell_conditional = {0.0, 0.0};
    if (p < kNegligibleProbability) {
      out.probability = 0.0;
      continue;
    }
    out.probability = p;
    out.post_state = PureState::normalized(v);
    for (std::size_t k = 0; k < 2; ++k) {
      out.bell_conditional[k] = squared_norm(
          project_bell(out.post_state->amplitudes(), 1, bell_state(labels[k])));
    }
  }
  return result;
}

ConclusiveTeleporter::ConclusiveTeleporter(const SchmidtPair& s)
    : resource_(partially_entangled(s)) {
  const DiscriminationPovm disc = discrimination_povm(s);
  const KrausSet kraus = kraus_from_povm(disc.povm);
  const CorrectionTable table = CorrectionTable::for_resource(resource_);
  const ComplexMatrix bob_identity = ComplexMatrix::identity(2);

  struct Block {
    const char* name;
    std::array<std::size_t, 2> basis;  // indices of particles 1,2
    std::array<BellLabel, 2> verdict_to_bell;
    bool mirrored;
  };
  // In the odd block the candidate states are (b, a) and (b, -a), the
  // discrimination targets with their components swapped.
  const std::array<Block, 2> blocks = {
      Block{"even", {0, 3}, {BellLabel::PhiPlus, BellLabel::PhiMinus}, false},
      Block{"odd", {1, 2}, {BellLabel::PsiPlus, BellLabel::PsiMinus}, true},
  };

  branches_.reserve(2 * kraus.size());
  for (const Block& block : blocks) {
    for (std::size_t k = 0; k < kraus.size(); ++k) {
      std::vector<Complex> embedded(16);
      for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
          const std::size_t si = block.mirrored ? 1 - i : i;
          const std::size_t sj = block.mirrored ? 1 - j : j;
          embedded[block.basis[i] * 4 + block.basis[j]] = kraus.op(k)(si, sj);
        }
      }
      const Verdict verdict = disc.verdicts[k];
      const bool conclusive = verdict != Verdict::Inconclusive;
      std::optional<ComplexMatrix> correction;
      if (conclusive) {
        correction = table.at(
            block.verdict_to_bell[verdict == Verdict::First ? 0 : 1]);
      }
      branches_.push_back(
          {std::string(block.name) + ":" + disc.povm.label(k),
           kron(ComplexMatrix(4, 4, std::move(embedded)), bob_identity),
           std::move(correction), conclusive, conclusive ? 3 : 1});
    }
  }
}

std::vector<ProtocolRecord> ConclusiveTeleporter::run(
    const PureState& phi) const {
  require_qubit(phi);
  const ComplexMatrix full = tensor(phi, resource_).ket();
  std::vector<ProtocolRecord> records;
  records.reserve(branches_.size());
  for (const Branch& branch : branches_) {
    const ComplexMatrix out = branch.op * full;
    const std::vector<Complex> v(out.entries().begin(), out.entries().end());
    const double p = squared_norm(v);
    if (p < kNegligibleProbability) {
      records.push_back({branch.label, 0.0, placeholder(2), branch.correction,
                         placeholder(2), 0.0, false, branch.classical_bits});
      continue;
    }
    const BobState pre = bob_reduced(v, p);
    const BobState post =
        branch.correction ? rotate(pre, *branch.correction) : pre;
    records.push_back({branch.label, p, pre, branch.correction, post,
                       fidelity(phi, post), branch.conclusive,
                       branch.classical_bits});
  }
  return records;
}

std::vector<ProtocolRecord> conclusive_teleport(
    const PureState& phi, const SchmidtPair& s) {
  return ConclusiveTeleporter(s).run(phi);
}

double conclusive_success_probability(const SchmidtPair& s) {
  return 1.0 - (s.a() * s.a() - s.b() * s.b());
}

FilterParams FilterParams::from_n(double n) {
  if (!(n >= 1.0) || !std::isfinite(n)) {
    throw ValidationError("filter index n must be finite and >= 1");
  }
  return FilterParams(n, 1.0 / std::sqrt(n));
}

FilterParams FilterParams::from_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw ValidationError("filter strength lambda must lie in (0, 1]");
  }
  return FilterParams(1.0 / (lambda * lambda), lambda);
}

FilterOutcome bilocal_filter(const DensityMatrix& rho, const FilterParams& fp) {
  if (rho.dim() != 4) {
    throw DimensionError("bilocal_filter needs a two-qubit state");
  }
  const ComplexMatrix v1 = ComplexMatrix::diagonal({fp.lambda(), 1.0});
  // Both parties' instruments must be valid measurements.
  const KrausSet local = filter_pair(v1);
  const ComplexMatrix both = kron(local.op(0), local.op(0));
  const ComplexMatrix unnormalized = apply(both, rho.matrix());
  const double p = unnormalized.trace().real();
  if (!(p > 0.0)) {
    throw ValidationError("filter annihilates the state");
  }
  return FilterOutcome{DensityMatrix(Complex{1.0 / p} * unnormalized), p};
}

double filtered_singlet_fraction(double p, double n) {
  return 1.0 / (1.0 + (1.0 - p) / (n * p));
}

double filter_success_probability(double p, double n) {
  return (1.0 + (n - 1.0) * p) / (n * n);
}

double max_teleport_fidelity(double singlet_fraction) {
  if (!(singlet_fraction >= 0.0 && singlet_fraction <= 1.0)) {
    throw ValidationError("singlet fraction must lie in [0, 1]");
  }
  return (2.0 * singlet_fraction + 1.0) / 3.0;
}

double average_teleport_fidelity(
    const DensityMatrix& resource, const CorrectionTable& table) {
  const std::array<PureState, 6> inputs = octahedron();
  double total = 0.0;
  for (const PureState& phi : inputs) {
    for (const ProtocolRecord& r : teleport_mixed(phi, resource, table)) {
      total += r.probability * r.fidelity;
    }
  }
  return total / static_cast<double>(inputs.size());
}

std::uint64_t plan_filter_strength(double p, double epsilon) {
  if (!(p > 0.0 && p < 1.0)) {
    throw ValidationError("p must lie in (0, 1)");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ValidationError("epsilon must lie in (0, 1)");
  }
  const auto meets = [&](double n) {
    return max_teleport_fidelity(filtered_singlet_fraction(p, n)) >=
           1.0 - epsilon;
  };
  if (meets(1.0)) return 1;
  // p'(n) >= F  <=>  n >= (1 - p) F / (p (1 - F)), with F = 1 - 3 eps / 2.
  const double target = 1.0 - 1.5 * epsilon;
  const double bound = (1.0 - p) * target / (p * (1.0 - target));
  constexpr double kLimit = 9007199254740992.0;  // 2^53
  if (!std::isfinite(bound) || bound >= kLimit) {
    throw CapabilityError(
        "epsilon too small: the required filter index exceeds 2^53");
  }
  auto n = static_cast<std::uint64_t>(std::max(1.0, std::ceil(bound)));
  while (n > 1 && meets(static_cast<double>(n - 1))) --n;
  while (!meets(static_cast<double>(n))) {
    if (static_cast<double>(n) >= kLimit) {
      throw CapabilityError("required filter index exceeds 2^53");
    }
    ++n;
  }
  return n;
}

QuasiConclusiveResult quasi_conclusive_teleport(
    const PureState& phi, double p, double epsilon) {
  require_qubit(phi);
  const std::uint64_t n = plan_filter_strength(p, epsilon);
  const FilterParams fp = FilterParams::from_n(static_cast<double>(n));
  const FilterOutcome filtered = bilocal_filter(mixed_resource(p), fp);
  const CorrectionTable table =
      CorrectionTable::for_bell_resource(BellLabel::PsiMinus);
  const double p_prime = fidelity(bell_state(BellLabel::PsiMinus),
                                  filtered.post_state);
  const double average = average_teleport_fidelity(filtered.post_state, table);
  constexpr double kRoundoff = 1e-12;
  if (average < 1.0 - epsilon - kRoundoff) {
    throw std::logic_error("planned filter misses the fidelity target");
  }
  return QuasiConclusiveResult{
      fp,
      p_prime,
      teleport_mixed(phi, filtered.post_state, table),
      filtered.success_probability,
      average,
      max_teleport_fidelity(std::clamp(p_prime, 0.0, 1.0)),
  };
}

}  // namespace telepovm
