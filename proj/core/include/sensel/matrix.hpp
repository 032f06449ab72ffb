// Copyright 2026 The Authors.
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

#ifndef SENSEL_MATRIX_HPP
#define SENSEL_MATRIX_HPP

#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "sensel/errors.hpp"

namespace sensel {

/// Dense real matrix, row-major storage. All library code works at "desk
/// scale" (n up to a few hundred), so there is no attempt at BLAS-level
/// performance; clarity and determinism win.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);  // zero-initialized

  static Matrix identity(int n);
  static Matrix diagonal(std::span<const double> entries);
  static Matrix scaled_identity(int n, double value);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return data_.empty(); }
  bool is_square() const { return rows_ == cols_; }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::span<const double> entries() const { return data_; }

  Matrix transpose() const;
  double trace() const;
  double frobenius_norm() const;
  double inf_norm() const;  // max absolute row sum
  double max_abs() const;
  double min_entry() const;
  bool all_finite() const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(double scalar);

  friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
  friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
  friend Matrix operator*(Matrix lhs, double scalar) { return lhs *= scalar; }
  friend Matrix operator*(double scalar, Matrix rhs) { return rhs *= scalar; }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);

/// (A + Aᵀ)/2. Used after inverse/product chains to suppress asymmetry drift.
Matrix symmetrized(const Matrix& a);

/// Result of a symmetric eigen-decomposition, A = V diag(λ) Vᵀ with the
/// eigenvalues sorted ascending and eigenvectors stored as columns of V.
struct SymEig {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
};

/// Cyclic Jacobi eigen-decomposition of the symmetrized input.
/// Converged when the off-diagonal Frobenius norm drops below 1e-12 * ||A||_F.
SymEig sym_eig(const Matrix& a);

double lambda_min_sym(const Matrix& a);
double lambda_max_sym(const Matrix& a);

/// Largest eigenvalue of a symmetric PSD matrix. Power iteration with a
/// residual-based stop; falls back to the full Jacobi decomposition if the
/// iteration stalls. Exact enough (1e-13 relative) for objective evaluation.
double lambda_max_psd(const Matrix& a);

/// Smallest eigenvalue of a symmetric positive definite matrix, through
/// inverse iteration on its Cholesky factorization (same fallback policy).
double lambda_min_psd(const Matrix& a);

/// Inverse of a symmetric positive definite matrix through its
/// eigen-decomposition. Rejects inputs with lambda_min <= 1e-12 * max(1, lambda_max).
Matrix psd_inverse(const Matrix& a);

/// Matrix exponential by scaling-and-squaring: halve until the inf-norm is
/// at most 0.5, take 20 Taylor terms, square back up.
Matrix matrix_exp(const Matrix& a);

/// Spectral norm of a general (possibly asymmetric) square or rectangular
/// matrix, computed as sqrt(lambda_max(AᵀA)).
double spectral_norm(const Matrix& a);

/// Loewner comparison: true iff lambda_min(A - B) >= -tol.
bool loewner_geq(const Matrix& a, const Matrix& b, double tol);

/// Cholesky factorization A = L Lᵀ of a symmetric positive definite matrix.
/// This is the fast path behind covariance evaluation; the public
/// psd_inverse above is the independent eigen-based route used as an oracle.
class Cholesky {
 public:
  explicit Cholesky(const Matrix& a);

  int dim() const { return static_cast<int>(diag_.size()); }
  std::vector<double> solve(std::span<const double> b) const;
  Matrix solve(const Matrix& b) const;
  Matrix inverse() const;
  double trace_of_inverse() const;
  double log_det() const;  // log det A = 2 sum log L_ii

 private:
  Matrix lower_;
  std::vector<double> diag_;
};

/// Cholesky-based SPD inverse (symmetrized output). Throws SingularityError
/// carrying lambda_min when the factorization breaks down.
Matrix spd_inverse(const Matrix& a);

}  // namespace sensel

#endif  // SENSEL_MATRIX_HPP
