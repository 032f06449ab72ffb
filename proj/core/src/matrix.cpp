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

#include "sensel/matrix.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace sensel {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw DimensionError(what);
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.all_finite()) throw NumericalError(std::string(what) + ": non-finite entries");
}

}  // namespace

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
  require(rows >= 0 && cols >= 0, "matrix dimensions must be nonnegative");
  data_.assign(static_cast<std::size_t>(rows) * cols, 0.0);
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::scaled_identity(int n, double value) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = value;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> entries) {
  Matrix m(static_cast<int>(entries.size()), static_cast<int>(entries.size()));
  for (int i = 0; i < m.rows(); ++i) m(i, i) = entries[i];
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
  Matrix m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    require(static_cast<int>(row.size()) == c, "ragged initializer rows");
    int j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::trace() const {
  require(is_square(), "trace requires a square matrix");
  double s = 0.0;
  for (int i = 0; i < rows_; ++i) s += (*this)(i, i);
  return s;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

double Matrix::inf_norm() const {
  double best = 0.0;
  for (int i = 0; i < rows_; ++i) {
    double row = 0.0;
    for (int j = 0; j < cols_; ++j) row += std::abs((*this)(i, j));
    best = std::max(best, row);
  }
  return best;
}

double Matrix::max_abs() const {
  double best = 0.0;
  for (double v : data_) best = std::max(best, std::abs(v));
  return best;
}

double Matrix::min_entry() const {
  double best = std::numeric_limits<double>::infinity();
  for (double v : data_) best = std::min(best, v);
  return best;
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "shape mismatch in matrix addition");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "shape mismatch in matrix subtraction");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double scalar) {
  for (double& v : data_) v *= scalar;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), "shape mismatch in matrix product");
  Matrix c(a.rows(), b.cols());
  // i-k-j loop order keeps the inner loop contiguous in both b and c.
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const double* brow = b.data() + static_cast<std::size_t>(k) * b.cols();
      double* crow = c.data() + static_cast<std::size_t>(i) * c.cols();
      for (int j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

std::vector<double> operator*(const Matrix& a, std::span<const double> x) {
  require(a.cols() == static_cast<int>(x.size()), "shape mismatch in matrix-vector product");
  std::vector<double> y(a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    const double* row = a.data() + static_cast<std::size_t>(i) * a.cols();
    for (int j = 0; j < a.cols(); ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

Matrix symmetrized(const Matrix& a) {
  require(a.is_square(), "symmetrization requires a square matrix");
  Matrix s(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
  return s;
}

SymEig sym_eig(const Matrix& input) {
  require(input.is_square(), "sym_eig requires a square matrix");
  require_finite(input, "sym_eig");
  const int n = input.rows();

  Matrix a = symmetrized(input);
  Matrix v = Matrix::identity(n);
  const double norm_ref = a.frobenius_norm();

  SymEig out;
  out.eigenvalues.assign(n, 0.0);

  if (n == 0) {
    out.eigenvectors = v;
    return out;
  }

  auto off_diag_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
  };

  constexpr int kMaxSweeps = 64;
  int sweep = 0;
  if (norm_ref > 0.0) {
    for (sweep = 0; sweep < kMaxSweeps; ++sweep) {
      if (off_diag_norm() <= 1e-12 * norm_ref) break;
      for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
          const double apq = a(p, q);
          if (apq == 0.0) continue;
          // Skip rotations that cannot change anything at working precision.
          if (std::abs(apq) <= 1e-300) {
            a(p, q) = a(q, p) = 0.0;
            continue;
          }
          const double app = a(p, p);
          const double aqq = a(q, q);
          const double theta = 0.5 * (aqq - app) / apq;
          double t;
          if (std::abs(theta) > 1e154) {
            t = 0.5 / theta;  // avoids overflow in theta*theta
          } else {
            t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
            if (theta < 0.0) t = -t;
          }
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;

          for (int k = 0; k < n; ++k) {
            const double akp = a(k, p);
            const double akq = a(k, q);
            a(k, p) = c * akp - s * akq;
            a(k, q) = s * akp + c * akq;
          }
          for (int k = 0; k < n; ++k) {
            const double apk = a(p, k);
            const double aqk = a(q, k);
            a(p, k) = c * apk - s * aqk;
            a(q, k) = s * apk + c * aqk;
          }
          a(p, q) = a(q, p) = 0.5 * (a(p, q) + a(q, p));
          for (int k = 0; k < n; ++k) {
            const double vkp = v(k, p);
            const double vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
    if (sweep == kMaxSweeps) {
      throw NumericalError("Jacobi eigensolver did not converge", kMaxSweeps);
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i) < a(j, j); });

  out.eigenvectors = Matrix(n, n);
  for (int col = 0; col < n; ++col) {
    out.eigenvalues[col] = a(order[col], order[col]);
    for (int row = 0; row < n; ++row) out.eigenvectors(row, col) = v(row, order[col]);
  }
  return out;
}

double lambda_min_sym(const Matrix& a) { return sym_eig(a).eigenvalues.front(); }

double lambda_max_sym(const Matrix& a) { return sym_eig(a).eigenvalues.back(); }

namespace {

/// Largest eigenvalue of a symmetric operator by Lanczos with full
/// reorthogonalization. Accepts once the Ritz residual bound
/// beta_k |s_k| drops below 1e-11 relative; empty on non-convergence.
std::optional<double> lanczos_largest(
    int n, const std::function<std::vector<double>(const std::vector<double>&)>& apply) {
  const int max_steps = std::min(n, 160);

  std::vector<std::vector<double>> basis;
  std::vector<double> diag, off;

  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = 1.0 + 1e-3 * static_cast<double>(i % 17);
  double vnorm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  for (double& x : v) x /= vnorm;

  const auto ritz_top = [&](int k) -> std::pair<double, double> {
    // Dense eigen-decomposition of the k x k tridiagonal section; returns the
    // top Ritz value and the magnitude of its eigenvector's last component.
    Matrix t(k, k);
    for (int i = 0; i < k; ++i) {
      t(i, i) = diag[i];
      if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = off[i];
    }
    const SymEig eig = sym_eig(t);
    return {eig.eigenvalues.back(), std::abs(eig.eigenvectors(k - 1, k - 1))};
  };

  double beta_prev = 0.0;
  std::vector<double> prev(n, 0.0);
  for (int k = 0; k < max_steps; ++k) {
    basis.push_back(v);
    std::vector<double> w = apply(v);
    const double alpha = std::inner_product(w.begin(), w.end(), v.begin(), 0.0);
    for (int i = 0; i < n; ++i) w[i] -= alpha * v[i] + beta_prev * prev[i];
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const double proj = std::inner_product(w.begin(), w.end(), b.begin(), 0.0);
        for (int i = 0; i < n; ++i) w[i] -= proj * b[i];
      }
    }
    diag.push_back(alpha);
    const double beta = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));

    const int steps = k + 1;
    const bool invariant = beta <= 1e-14 * std::max(std::abs(alpha), 1.0);
    if (invariant || steps % 8 == 0 || steps == max_steps) {
      const auto [theta, last] = ritz_top(steps);
      if (invariant || beta * last <= 1e-11 * std::max(std::abs(theta), 1e-300)) {
        return theta;
      }
      if (steps == max_steps) break;
    }

    off.push_back(beta);
    prev = basis.back();
    for (int i = 0; i < n; ++i) v[i] = w[i] / beta;
    beta_prev = beta;
  }
  return std::nullopt;
}

}  // namespace

double lambda_max_psd(const Matrix& a) {
  require(a.is_square(), "lambda_max_psd requires a square matrix");
  const int n = a.rows();
  if (n == 0) return 0.0;
  if (n == 1) return a(0, 0);
  if (n <= 8) return lambda_max_sym(a);

  const auto apply = [&a](const std::vector<double>& x) {
    return a * std::span<const double>(x);
  };
  if (const auto theta = lanczos_largest(n, apply)) return *theta;
  return lambda_max_sym(a);  // stalled; fall back to the exact decomposition
}

double lambda_min_psd(const Matrix& a) {
  require(a.is_square(), "lambda_min_psd requires a square matrix");
  const int n = a.rows();
  if (n == 0) return 0.0;
  if (n == 1) return a(0, 0);
  if (n <= 8) return lambda_min_sym(a);

  // Largest eigenvalue of A^-1 through Cholesky solves.
  const Cholesky chol(a);
  const auto apply = [&chol](const std::vector<double>& x) { return chol.solve(x); };
  if (const auto theta = lanczos_largest(n, apply)) {
    if (*theta > 0.0) return 1.0 / *theta;
  }
  return lambda_min_sym(a);  // stalled; fall back to the exact decomposition
}

Matrix psd_inverse(const Matrix& input) {
  require(input.is_square(), "psd_inverse requires a square matrix");
  const SymEig eig = sym_eig(input);
  const int n = input.rows();
  const double lmin = eig.eigenvalues.front();
  const double lmax = eig.eigenvalues.back();
  if (lmin <= 1e-12 * std::max(1.0, lmax)) {
    throw SingularityError(
        "psd_inverse: matrix is not positive definite (lambda_min = " +
            std::to_string(lmin) + ")",
        lmin);
  }
  Matrix inv(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k)
        s += eig.eigenvectors(i, k) * eig.eigenvectors(j, k) / eig.eigenvalues[k];
      inv(i, j) = inv(j, i) = s;
    }
  }
  return inv;
}

Matrix matrix_exp(const Matrix& a) {
  require(a.is_square(), "matrix_exp requires a square matrix");
  require_finite(a, "matrix_exp");
  const int n = a.rows();

  int squarings = 0;
  double norm = a.inf_norm();
  while (norm > 0.5 && squarings < 64) {
    norm *= 0.5;
    ++squarings;
  }

  Matrix b = a;
  b *= std::ldexp(1.0, -squarings);

  Matrix result = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  constexpr int kTaylorTerms = 20;
  for (int k = 1; k <= kTaylorTerms; ++k) {
    term = term * b;
    term *= 1.0 / static_cast<double>(k);
    result += term;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  require_finite(result, "matrix_exp");
  return result;
}

double spectral_norm(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  const Matrix gram = a.transpose() * a;
  const double lmax = lambda_max_sym(gram);
  return std::sqrt(std::max(lmax, 0.0));
}

bool loewner_geq(const Matrix& a, const Matrix& b, double tol) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "loewner_geq shape mismatch");
  return lambda_min_sym(a - b) >= -tol;
}

Cholesky::Cholesky(const Matrix& a) {
  require(a.is_square(), "Cholesky requires a square matrix");
  const int n = a.rows();
  lower_ = Matrix(n, n);
  diag_.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double d = a(j, j);
    for (int k = 0; k < j; ++k) d -= lower_(j, k) * lower_(j, k);
    if (!(d > 0.0) || !std::isfinite(d)) {
      const double lmin = lambda_min_sym(a);
      throw SingularityError(
          "Cholesky breakdown: matrix is not positive definite (lambda_min = " +
              std::to_string(lmin) + ")",
          lmin);
    }
    const double ljj = std::sqrt(d);
    lower_(j, j) = ljj;
    diag_[j] = ljj;
    for (int i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (int k = 0; k < j; ++k) s -= lower_(i, k) * lower_(j, k);
      lower_(i, j) = s / ljj;
    }
  }
}

std::vector<double> Cholesky::solve(std::span<const double> b) const {
  const int n = dim();
  require(static_cast<int>(b.size()) == n, "Cholesky solve size mismatch");
  std::vector<double> y(b.begin(), b.end());
  for (int i = 0; i < n; ++i) {
    double s = y[i];
    for (int k = 0; k < i; ++k) s -= lower_(i, k) * y[k];
    y[i] = s / diag_[i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = y[i];
    for (int k = i + 1; k < n; ++k) s -= lower_(k, i) * y[k];
    y[i] = s / diag_[i];
  }
  return y;
}

Matrix Cholesky::solve(const Matrix& b) const {
  const int n = dim();
  require(b.rows() == n, "Cholesky solve size mismatch");
  Matrix x(n, b.cols());
  std::vector<double> col(n);
  for (int j = 0; j < b.cols(); ++j) {
    for (int i = 0; i < n; ++i) col[i] = b(i, j);
    std::vector<double> sol = solve(col);
    for (int i = 0; i < n; ++i) x(i, j) = sol[i];
  }
  return x;
}

Matrix Cholesky::inverse() const {
  const int n = dim();
  // Invert L in place (lower triangular), then A^-1 = L^-T L^-1.
  Matrix linv(n, n);
  for (int j = 0; j < n; ++j) {
    linv(j, j) = 1.0 / diag_[j];
    for (int i = j + 1; i < n; ++i) {
      double s = 0.0;
      for (int k = j; k < i; ++k) s -= lower_(i, k) * linv(k, j);
      linv(i, j) = s / diag_[i];
    }
  }
  Matrix inv(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = j; k < n; ++k) s += linv(k, i) * linv(k, j);
      inv(i, j) = inv(j, i) = s;
    }
  }
  return inv;
}

double Cholesky::trace_of_inverse() const {
  const int n = dim();
  // trace(A^-1) = ||L^-1||_F^2; compute L^-1 column by column.
  double total = 0.0;
  std::vector<double> col(n);
  for (int j = 0; j < n; ++j) {
    std::fill(col.begin(), col.end(), 0.0);
    col[j] = 1.0 / diag_[j];
    for (int i = j + 1; i < n; ++i) {
      double s = 0.0;
      for (int k = j; k < i; ++k) s -= lower_(i, k) * col[k];
      col[i] = s / diag_[i];
    }
    for (int i = j; i < n; ++i) total += col[i] * col[i];
  }
  return total;
}

double Cholesky::log_det() const {
  double s = 0.0;
  for (double d : diag_) s += std::log(d);
  return 2.0 * s;
}

Matrix spd_inverse(const Matrix& a) {
  Cholesky chol(a);
  return symmetrized(chol.inverse());
}

}  // namespace sensel
