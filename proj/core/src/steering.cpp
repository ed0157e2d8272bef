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

#include "telepovm/steering.hpp"

#include <cmath>

#include "telepovm/errors.hpp"

namespace telepovm {

namespace {

constexpr double kNegligibleProbability = 1e-12;

PureState dominant_eigenvector(const ComplexMatrix& rho) {
  const HermitianEigen eig = eigh(rho);
  const std::size_t n = rho.rows();
  if (eig.values.back() < 1.0 - Tolerance::kDefault) {
    throw ValidationError(
        "conditional state is mixed; steering needs rank-1 POVM elements");
  }
  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = eig.vectors(i, n - 1);
  return PureState::normalized(std::move(v)).canonical_phase();
}

}  // namespace

Ensemble::Ensemble(std::vector<EnsembleMember> members, Tolerance tol)
    : members_(std::move(members)) {
  if (members_.empty()) throw ValidationError("empty ensemble");
  double total = 0.0;
  for (const EnsembleMember& m : members_) {
    if (!(m.probability >= 0.0)) {
      throw ValidationError("ensemble probabilities must be non-negative");
    }
    if (m.state.dim() != members_.front().state.dim()) {
      throw DimensionError("ensemble states must share a dimension");
    }
    total += m.probability;
  }
  if (std::abs(total - 1.0) > tol.eps()) {
    throw ValidationError("ensemble probabilities must sum to 1");
  }
}

DensityMatrix ensemble_density(const Ensemble& e) {
  ComplexMatrix rho(e.dim(), e.dim());
  for (const EnsembleMember& m : e.members()) {
    rho = rho + Complex{m.probability} * m.state.projector();
  }
  return DensityMatrix(rho);
}

Ensemble canonical_ensemble(NamedEnsemble name, Complex alpha, Complex beta) {
  const double h = 1.0 / std::sqrt(2.0);
  const PureState zero{1.0, 0.0};
  const PureState one{0.0, 1.0};
  const PureState plus{h, h};
  const PureState minus{h, -h};
  switch (name) {
    case NamedEnsemble::E1:
      return Ensemble({{0.5, zero}, {0.5, one}});
    case NamedEnsemble::E2:
      return Ensemble({{0.5, plus}, {0.5, minus}});
    case NamedEnsemble::E3:
      return Ensemble({{0.25, zero}, {0.25, one}, {0.25, plus}, {0.25, minus}});
    case NamedEnsemble::E4: {
      const double n2 = std::norm(alpha) + std::norm(beta);
      if (std::abs(n2 - 1.0) > Tolerance::kDefault) {
        throw ValidationError("E4 needs |alpha|^2 + |beta|^2 = 1");
      }
      return Ensemble({{0.25, PureState{alpha, beta}},
                       {0.25, PureState{alpha, -beta}},
                       {0.25, PureState{beta, alpha}},
                       {0.25, PureState{beta, -alpha}}});
    }
  }
  throw ValidationError("unknown ensemble");
}

SteeringResult steer(const PureState& shared, const Povm& alice_povm) {
  const std::size_t d_alice = alice_povm.dim();
  if (shared.dim() % d_alice != 0 || shared.dim() == d_alice) {
    throw DimensionError("shared state does not factor as Alice x Bob");
  }
  const std::size_t d_bob = shared.dim() / d_alice;
  const ComplexMatrix joint = shared.projector();
  const ComplexMatrix bob_identity = ComplexMatrix::identity(d_bob);

  SteeringResult out;
  out.branches.reserve(alice_povm.size());
  for (std::size_t i = 0; i < alice_povm.size(); ++i) {
    const ComplexMatrix unnormalized = partial_trace(
        kron(alice_povm.element(i), bob_identity) * joint,
        {d_alice, d_bob}, Subsystem::A);
    const double p = unnormalized.trace().real();
    if (p < kNegligibleProbability) {
      out.branches.push_back(
          {alice_povm.label(i), 0.0, PureState::basis(d_bob, 0), false});
      continue;
    }
    out.branches.push_back(
        {alice_povm.label(i), p,
         dominant_eigenvector(Complex{1.0 / p} * unnormalized), true});
  }
  return out;
}

ComplexMatrix steered_density(const SteeringResult& r) {
  if (r.branches.empty()) throw ValidationError("no branches");
  const std::size_t d = r.branches.front().bob_state.dim();
  ComplexMatrix rho(d, d);
  for (const SteeringBranch& b : r.branches) {
    if (!b.defined) continue;
    rho = rho + Complex{b.probability} * b.bob_state.projector();
  }
  return rho;
}

Povm rectilinear_povm() {
  return Povm({ComplexMatrix::diagonal({1.0, 0.0}),
               ComplexMatrix::diagonal({0.0, 1.0})},
              {"0", "1"});
}

Povm diagonal_povm() {
  const double h = 1.0 / std::sqrt(2.0);
  return Povm({PureState{h, h}.projector(), PureState{h, -h}.projector()},
              {"+", "-"});
}

SteeringResult b92_generation(const SchmidtPair& s, B92Basis basis) {
  SteeringResult r = steer(partially_entangled(s), diagonal_povm());
  if (basis == B92Basis::Diagonal) return r;
  const double h = 1.0 / std::sqrt(2.0);
  for (SteeringBranch& b : r.branches) {
    const PureState& v = b.bob_state;
    b.bob_state = PureState::normalized({h * (v[0] + v[1]), h * (v[0] - v[1])})
                      .canonical_phase();
  }
  return r;
}

}  // namespace telepovm
