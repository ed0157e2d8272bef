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

// Random generators and brute-force reference routines shared by the unit
// and acceptance suites. Nothing here calls into the code paths it is used
// to check: Bell-measurement statistics, partial traces and the like are
// recomputed from full-space projectors built entry by entry.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "telepovm/linalg.hpp"
#include "telepovm/states.hpp"

namespace telepovm::testing {

inline std::vector<Complex> gaussian_vector(std::mt19937_64& rng,
                                            std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(n);
  for (Complex& z : v) z = Complex{g(rng), g(rng)};
  return v;
}

inline PureState random_state(std::mt19937_64& rng, std::size_t dim) {
  return PureState::normalized(gaussian_vector(rng, dim));
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  return ComplexMatrix(n, n, gaussian_vector(rng, n * n));
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
  const ComplexMatrix g = random_matrix(rng, n);
  return Complex{0.5} * (g + g.adjoint());
}

/// Random unitary from the QR of a Gaussian matrix (Gram-Schmidt on
/// columns).
inline ComplexMatrix random_unitary(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::vector<Complex>> cols;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Complex> v = gaussian_vector(rng, n);
    for (const auto& q : cols) {
      Complex dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(q[i]) * v[i];
      for (std::size_t i = 0; i < n; ++i) v[i] -= dot * q[i];
    }
    double norm = 0.0;
    for (const Complex& z : v) norm += std::norm(z);
    for (Complex& z : v) z /= std::sqrt(norm);
    cols.push_back(std::move(v));
  }
  std::vector<Complex> e(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) e[r * n + c] = cols[c][r];
  }
  return ComplexMatrix(n, n, std::move(e));
}

inline PureState apply(const ComplexMatrix& u, const PureState& psi) {
  const ComplexMatrix out = u * psi.ket();
  return PureState::normalized(
      std::vector<Complex>(out.entries().begin(), out.entries().end()));
}

/// |a><b| as an n x n matrix.
inline ComplexMatrix unit(std::size_t n, std::size_t a, std::size_t b) {
  std::vector<Complex> e(n * n);
  e[a * n + b] = 1.0;
  return ComplexMatrix(n, n, std::move(e));
}

/// Reference partial trace over A: sum_k (<k| (x) I) m (|k> (x) I), built
/// from explicit Kronecker factors.
inline ComplexMatrix reference_trace_a(const ComplexMatrix& m, std::size_t da,
                                       std::size_t db) {
  ComplexMatrix out(db, db);
  for (std::size_t k = 0; k < da; ++k) {
    std::vector<Complex> bra(da);
    bra[k] = 1.0;
    const ComplexMatrix left =
        kron(ComplexMatrix(1, da, bra), ComplexMatrix::identity(db));
    out = out + left * m * left.adjoint();
  }
  return out;
}

/// <Psi| (P (x) I_rest) |Psi> with P acting on the leading factor.
inline double expectation(const PureState& psi, const ComplexMatrix& p_high) {
  const std::size_t rest = psi.dim() / p_high.rows();
  const ComplexMatrix full = kron(p_high, ComplexMatrix::identity(rest));
  const ComplexMatrix v = psi.ket();
  return (v.adjoint() * full * v)(0, 0).real();
}

/// Probability of Bell outcome `b` on particles 1,2 of a three-qubit state.
inline double bell_probability(const PureState& psi123, BellLabel b) {
  return expectation(psi123, bell_state(b).projector());
}

}  // namespace telepovm::testing
