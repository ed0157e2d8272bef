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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace telepovm {

using Complex = std::complex<double>;

/**
 * Absolute tolerance used by every validating operation.
 *
 * Hermiticity, trace, completeness and eigenvalue-sign checks all compare
 * against `eps` entrywise.
 */
class Tolerance {
 public:
  static constexpr double kDefault = 1e-9;

  constexpr Tolerance() = default;
  explicit Tolerance(double eps);

  constexpr double eps() const { return eps_; }

 private:
  double eps_ = kDefault;
};

/**
 * Dense complex matrix, row-major.
 *
 * Values are immutable once constructed; every operation returns a new
 * matrix. All stored entries are finite. Column vectors are n x 1 matrices.
 */
class ComplexMatrix {
 public:
  /// Zero matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(
      std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  /// Row-by-row literal, e.g. `{{1, 0}, {0, 1}}`.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix diagonal(std::initializer_list<Complex> diag);
  static ComplexMatrix column(std::span<const Complex> entries);
  /// |u><v| for column data u, v.
  static ComplexMatrix outer(
      std::span<const Complex> u, std::span<const Complex> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Complex& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  std::span<const Complex> entries() const { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;

  friend ComplexMatrix operator+(
      const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(
      const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(
      const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& m);
  friend ComplexMatrix operator*(const ComplexMatrix& m, Complex s) {
    return s * m;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> entries_;
};

/// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entrywise modulus.
double max_abs(const ComplexMatrix& m);

/// Tr(a b) without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

/**
 * Kronecker product. Row index of the result is i_a * b.rows() + i_b, so the
 * first factor is the high-order subsystem.
 */
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

struct SubsystemDims {
  std::size_t a;
  std::size_t b;
};

enum class Subsystem { A, B };

/**
 * Traces out `traced` from an operator on A (x) B laid out with A high-order.
 * Returns a dB x dB matrix when tracing A, dA x dA when tracing B.
 */
ComplexMatrix partial_trace(
    const ComplexMatrix& m, SubsystemDims dims, Subsystem traced);

bool is_hermitian(const ComplexMatrix& m, Tolerance tol = {});

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending; column k of
/// `vectors` belongs to `values[k]`.
struct HermitianEigen {
  std::vector<double> values;
  ComplexMatrix vectors;
};

/**
 * Cyclic Jacobi eigendecomposition. The input is symmetrized as (m + m^†)/2
 * first; callers that care whether it was Hermitian check that themselves.
 */
HermitianEigen eigh(const ComplexMatrix& m);

/// True iff m is square, Hermitian within tol and its least eigenvalue is
/// at least -tol.eps().
bool is_psd(const ComplexMatrix& m, Tolerance tol = {});

/**
 * Positive square root of a PSD matrix. Eigenvalues in [-eps, 0) are
 * clamped to zero.
 *
 * Throws ValidationError for non-Hermitian input or an eigenvalue below
 * -tol.eps().
 */
ComplexMatrix sqrt_psd(const ComplexMatrix& m, Tolerance tol = {});

}  // namespace telepovm
