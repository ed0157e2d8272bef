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

#include "telepovm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "telepovm/errors.hpp"

namespace telepovm {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(
        "shape mismatch: " + std::to_string(a.rows()) + "x" +
        std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
        std::to_string(b.cols()));
  }
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (!m.is_square()) {
    throw DimensionError(std::string(what) + ": matrix is not square");
  }
}

}  // namespace

Tolerance::Tolerance(double eps) : eps_(eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw ValidationError("tolerance must be positive and finite");
  }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : ComplexMatrix(rows, cols, std::vector<Complex>(rows * cols)) {}

ComplexMatrix::ComplexMatrix(
    std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0) {
    throw DimensionError("matrix dimensions must be positive");
  }
  if (entries_.size() != rows_ * cols_) {
    throw DimensionError("entry count does not match rows x cols");
  }
  for (const Complex& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ValidationError("matrix entries must be finite");
    }
  }
}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<Complex>> rows)
    : ComplexMatrix(
          rows.size(), rows.size() == 0 ? 0 : rows.begin()->size(),
          [&] {
            std::vector<Complex> flat;
            const std::size_t width = rows.size() == 0 ? 0 : rows.begin()->size();
            for (const auto& row : rows) {
              if (row.size() != width) {
                throw DimensionError("ragged matrix literal");
              }
              flat.insert(flat.end(), row.begin(), row.end());
            }
            return flat;
          }()) {}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return ComplexMatrix(n, n, std::move(e));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  const std::size_t n = diag.size();
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = diag[i];
  return ComplexMatrix(n, n, std::move(e));
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<Complex> diag) {
  return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> entries) {
  return ComplexMatrix(
      entries.size(), 1, std::vector<Complex>(entries.begin(), entries.end()));
}

ComplexMatrix ComplexMatrix::outer(
    std::span<const Complex> u, std::span<const Complex> v) {
  std::vector<Complex> e(u.size() * v.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      e[i * v.size() + j] = u[i] * std::conj(v[j]);
    }
  }
  return ComplexMatrix(u.size(), v.size(), std::move(e));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  std::vector<Complex> e(rows_ * cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      e[c * rows_ + r] = std::conj((*this)(r, c));
    }
  }
  return ComplexMatrix(cols_, rows_, std::move(e));
}

ComplexMatrix ComplexMatrix::transpose() const {
  std::vector<Complex> e(rows_ * cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) e[c * rows_ + r] = (*this)(r, c);
  }
  return ComplexMatrix(cols_, rows_, std::move(e));
}

Complex ComplexMatrix::trace() const {
  require_square(*this, "trace");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  std::vector<Complex> e(a.entries_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.entries_[i];
  return ComplexMatrix(a.rows_, a.cols_, std::move(e));
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  std::vector<Complex> e(a.entries_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= b.entries_[i];
  return ComplexMatrix(a.rows_, a.cols_, std::move(e));
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw DimensionError("product: inner dimensions differ");
  }
  std::vector<Complex> e(a.rows_ * b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        e[i * b.cols_ + j] += aik * b(k, j);
      }
    }
  }
  return ComplexMatrix(a.rows_, b.cols_, std::move(e));
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& m) {
  std::vector<Complex> e(m.entries_);
  for (Complex& z : e) z *= s;
  return ComplexMatrix(m.rows_, m.cols_, std::move(e));
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return worst;
}

double max_abs(const ComplexMatrix& m) {
  double worst = 0.0;
  for (const Complex& z : m.entries()) worst = std::max(worst, std::abs(z));
  return worst;
}

Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw DimensionError("trace_of_product: shapes do not compose");
  }
  Complex t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  }
  return t;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  std::vector<Complex> e(rows * cols);
  for (std::size_t ia = 0; ia < a.rows(); ++ia) {
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const Complex s = a(ia, ja);
      for (std::size_t ib = 0; ib < b.rows(); ++ib) {
        for (std::size_t jb = 0; jb < b.cols(); ++jb) {
          e[(ia * b.rows() + ib) * cols + ja * b.cols() + jb] = s * b(ib, jb);
        }
      }
    }
  }
  return ComplexMatrix(rows, cols, std::move(e));
}

ComplexMatrix partial_trace(
    const ComplexMatrix& m, SubsystemDims dims, Subsystem traced) {
  if (!m.is_square() || dims.a == 0 || dims.b == 0 ||
      m.rows() != dims.a * dims.b) {
    throw DimensionError("partial_trace: matrix does not factor as dA*dB");
  }
  if (traced == Subsystem::A) {
    std::vector<Complex> e(dims.b * dims.b);
    for (std::size_t i = 0; i < dims.b; ++i) {
      for (std::size_t j = 0; j < dims.b; ++j) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < dims.a; ++k) {
          s += m(k * dims.b + i, k * dims.b + j);
        }
        e[i * dims.b + j] = s;
      }
    }
    return ComplexMatrix(dims.b, dims.b, std::move(e));
  }
  std::vector<Complex> e(dims.a * dims.a);
  for (std::size_t i = 0; i < dims.a; ++i) {
    for (std::size_t j = 0; j < dims.a; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < dims.b; ++k) {
        s += m(i * dims.b + k, j * dims.b + k);
      }
      e[i * dims.a + j] = s;
    }
  }
  return ComplexMatrix(dims.a, dims.a, std::move(e));
}

bool is_hermitian(const ComplexMatrix& m, Tolerance tol) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol.eps()) return false;
    }
  }
  return true;
}

HermitianEigen eigh(const ComplexMatrix& m) {
  require_square(m, "eigh");
  const std::size_t n = m.rows();
  std::vector<Complex> a(n * n);
  std::vector<Complex> v(n * n);
  double frob2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i * n + j] = 0.5 * (m(i, j) + std::conj(m(j, i)));
      frob2 += std::norm(a[i * n + j]);
    }
    v[i * n + i] = 1.0;
  }
  auto at = [&](std::size_t r, std::size_t c) -> Complex& {
    return a[r * n + c];
  };

  constexpr int kMaxSweeps = 100;
  const double threshold = 1e-30 * frob2;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(at(p, q));
    }
    if (off <= threshold) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex g = at(p, q);
        const double g_abs = std::abs(g);
        if (g_abs == 0.0) continue;
        // Rotate the phase of a_pq away, then apply a real symmetric Schur
        // rotation to the resulting 2x2 block.
        const Complex w = std::conj(g) / g_abs;
        const double tau = (at(q, q).real() - at(p, p).real()) / (2.0 * g_abs);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex u_pp = c;
        const Complex u_pq = s;
        const Complex u_qp = -s * w;
        const Complex u_qq = c * w;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = at(k, p);
          const Complex akq = at(k, q);
          at(k, p) = akp * u_pp + akq * u_qp;
          at(k, q) = akp * u_pq + akq * u_qq;
          const Complex vkp = v[k * n + p];
          const Complex vkq = v[k * n + q];
          v[k * n + p] = vkp * u_pp + vkq * u_qp;
          v[k * n + q] = vkp * u_pq + vkq * u_qq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = at(p, k);
          const Complex aqk = at(q, k);
          at(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
          at(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        at(p, p) = at(p, p).real();
        at(q, q) = at(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return at(x, x).real() < at(y, y).real();
  });
  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
  std::vector<Complex> vec(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = at(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) vec[r * n + k] = v[r * n + order[k]];
  }
  out.vectors = ComplexMatrix(n, n, std::move(vec));
  return out;
}

bool is_psd(const ComplexMatrix& m, Tolerance tol) {
  if (!is_hermitian(m, tol)) return false;
  return eigh(m).values.front() >= -tol.eps();
}

ComplexMatrix sqrt_psd(const ComplexMatrix& m, Tolerance tol) {
  require_square(m, "sqrt_psd");
  if (!is_hermitian(m, tol)) {
    throw ValidationError("sqrt_psd: matrix is not Hermitian");
  }
  const HermitianEigen eig = eigh(m);
  if (eig.values.front() < -tol.eps()) {
    throw ValidationError(
        "sqrt_psd: negative eigenvalue " + std::to_string(eig.values.front()));
  }
  const std::size_t n = m.rows();
  // Eigenvalues at round-off level are zero; their roots would not be.
  const double spread = std::max(std::abs(eig.values.front()),
                                 std::abs(eig.values.back()));
  const double floor =
      64.0 * std::numeric_limits<double>::epsilon() * spread;
  std::vector<Complex> e(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    if (eig.values[k] <= floor) continue;
    const double root = std::sqrt(eig.values[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = eig.vectors(i, k) * root;
      for (std::size_t j = 0; j < n; ++j) {
        e[i * n + j] += vik * std::conj(eig.vectors(j, k));
      }
    }
  }
  return ComplexMatrix(n, n, std::move(e));
}

}  // namespace telepovm
