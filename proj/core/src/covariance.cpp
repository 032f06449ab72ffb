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

#include "sensel/covariance.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace sensel {

void InformationModel::validate() const {
  const double empty_min = lambda_min_sym(m_empty);
  const double empty_max = lambda_max_sym(m_empty);
  if (empty_min <= 1e-12 * std::max(1.0, empty_max)) {
    throw ConfigError("InformationModel: M_empty must be positive definite");
  }
  for (int u = 0; u < ground_size(); ++u) {
    const Matrix& m = m_sensors[u];
    if (m.rows() != dim() || m.cols() != dim()) {
      throw DimensionError("InformationModel: M_" + std::to_string(u) + " has wrong shape");
    }
    const double lmax = lambda_max_sym(m);
    if (lambda_min_sym(m) < -1e-10 * std::max(lmax, 1.0)) {
      throw ConfigError("InformationModel: M_" + std::to_string(u) +
                        " must be positive semidefinite");
    }
  }
}

Matrix evaluate_Y(const InformationModel& model, const SensorSet& x) {
  Matrix sum = model.m_empty;
  for (int u : x.members()) {
    if (u < 0 || u >= model.ground_size()) {
      throw PreconditionError("sensor index " + std::to_string(u) +
                              " outside the model ground set");
    }
    sum += model.m_sensors[u];
  }
  return spd_inverse(sum);
}

Matrix sensor_information(const Sensor& sensor) {
  const Matrix r_inv = psd_inverse(sensor.R_v);
  return symmetrized(sensor.H.transpose() * (r_inv * sensor.H));
}

std::vector<Matrix> sensor_information_all(const LinearSystem& sys) {
  std::vector<Matrix> v;
  v.reserve(sys.sensors.size());
  for (const Sensor& s : sys.sensors) v.push_back(sensor_information(s));
  return v;
}

namespace {

/// B with R_v^(-1) = B Bᵀ would be R^(-1/2); we need factors of
/// V_u = Hᵀ R^(-1) H, i.e. B_u = Hᵀ R^(-1/2).
Matrix sensor_information_factor(const Sensor& sensor) {
  const SymEig eig = sym_eig(sensor.R_v);
  const int p = sensor.R_v.rows();
  Matrix r_inv_sqrt(p, p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      double s = 0.0;
      for (int k = 0; k < p; ++k) {
        s += eig.eigenvectors(i, k) * eig.eigenvectors(j, k) / std::sqrt(eig.eigenvalues[k]);
      }
      r_inv_sqrt(i, j) = s;
    }
  }
  return sensor.H.transpose() * r_inv_sqrt;
}

/// Factor a generic PSD matrix through its eigen-decomposition, dropping
/// numerically zero directions.
Matrix psd_factor(const Matrix& m) {
  const SymEig eig = sym_eig(m);
  const int n = m.rows();
  const double lmax = std::max(eig.eigenvalues.back(), 0.0);
  std::vector<int> keep;
  for (int k = 0; k < n; ++k)
    if (eig.eigenvalues[k] > 1e-14 * std::max(lmax, 1e-300)) keep.push_back(k);
  Matrix b(n, static_cast<int>(keep.size()));
  for (std::size_t col = 0; col < keep.size(); ++col) {
    const double root = std::sqrt(eig.eigenvalues[keep[col]]);
    for (int row = 0; row < n; ++row)
      b(row, static_cast<int>(col)) = eig.eigenvectors(row, keep[col]) * root;
  }
  return b;
}

}  // namespace

HorizonModel filtering_horizon(const LinearSystem& sys, const SensorSet& x_schedule, int m,
                               int N) {
  if (m < 0 || N < 1) throw PreconditionError("filtering_horizon requires m >= 0, N >= 1");
  for (int u : x_schedule.members()) {
    if (u >= sys.num_sensors()) {
      throw PreconditionError("schedule sensor index outside the ground set");
    }
  }

  const std::vector<Matrix> v_all = sensor_information_all(sys);
  std::vector<Matrix> factors;
  factors.reserve(sys.sensors.size());
  for (const Sensor& s : sys.sensors) factors.push_back(sensor_information_factor(s));

  HorizonModel horizon;
  horizon.m = m;
  horizon.N = N;
  horizon.kind = EstimationKind::filtering;

  Matrix prior = sys.Pi0;  // P_{0|-1}
  for (int k = 0; k < m + N; ++k) {
    Matrix prior_info = spd_inverse(prior);
    if (k >= m) {
      InformationModel step;
      step.m_empty = prior_info;
      step.m_sensors = v_all;
      step.m_factors = factors;
      step.step = k;
      step.kind = EstimationKind::filtering;
      horizon.steps.push_back(std::move(step));
    }
    // Measurement update under the fixed schedule, then one-step prediction.
    Matrix info = std::move(prior_info);
    for (int u : x_schedule.members()) info += v_all[u];
    const Matrix posterior =
        x_schedule.empty() ? prior : symmetrized(spd_inverse(info));
    prior = symmetrized(sys.F * posterior * sys.F.transpose() + sys.R_w);
  }
  return horizon;
}

Matrix smoothing_phi(const Matrix& f, int k) {
  if (!f.is_square()) throw DimensionError("smoothing_phi requires a square F");
  if (k < 0) throw PreconditionError("smoothing_phi requires k >= 0");
  const int n = f.rows();

  std::vector<Matrix> powers;
  powers.reserve(k + 1);
  powers.push_back(Matrix::identity(n));
  for (int d = 1; d <= k; ++d) powers.push_back(f * powers.back());

  Matrix phi((k + 1) * n, (k + 1) * n);
  for (int i = 0; i <= k; ++i) {
    for (int j = 0; j <= i; ++j) {
      const Matrix& block = powers[i - j];
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) phi(i * n + r, j * n + c) = block(r, c);
    }
  }
  return phi;
}

HorizonModel smoothing_horizon(const LinearSystem& sys, int m, int N, int dim_cap) {
  if (m < 0 || N < 1) throw PreconditionError("smoothing_horizon requires m >= 0, N >= 1");
  const int n = sys.n;
  const long long max_dim = static_cast<long long>(m + N) * n;
  if (max_dim > dim_cap) {
    throw SizeError("smoothing horizon needs lifted dimension " + std::to_string(max_dim) +
                    ", above the cap of " + std::to_string(dim_cap));
  }

  const Matrix pi0_inv = psd_inverse(sys.Pi0);
  const Matrix rw_inv = psd_inverse(sys.R_w);

  HorizonModel horizon;
  horizon.m = m;
  horizon.N = N;
  horizon.kind = EstimationKind::smoothing;

  // F powers shared by all the Phi_k blocks.
  std::vector<Matrix> powers;
  powers.push_back(Matrix::identity(n));
  for (int d = 1; d <= m + N - 1; ++d) powers.push_back(sys.F * powers.back());

  for (int k = m; k < m + N; ++k) {
    const int dim = (k + 1) * n;
    InformationModel step;
    step.step = k;
    step.kind = EstimationKind::smoothing;

    step.m_empty = Matrix(dim, dim);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) step.m_empty(r, c) = pi0_inv(r, c);
    for (int blk = 1; blk <= k; ++blk)
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) step.m_empty(blk * n + r, blk * n + c) = rw_inv(r, c);

    for (const Sensor& sensor : sys.sensors) {
      // Row block i of (I (x) H_u) Phi_k is [H F^i, H F^(i-1), ..., H, 0, ...];
      // the factor B_u stacks those rows scaled by R_v^(-1/2).
      const int p = sensor.H.rows();
      std::vector<Matrix> h_pow(k + 1);
      for (int d = 0; d <= k; ++d) h_pow[d] = sensor.H * powers[d];

      const SymEig r_eig = sym_eig(sensor.R_v);
      Matrix r_inv_sqrt(p, p);
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
          double s = 0.0;
          for (int e = 0; e < p; ++e)
            s += r_eig.eigenvectors(i, e) * r_eig.eigenvectors(j, e) /
                 std::sqrt(r_eig.eigenvalues[e]);
          r_inv_sqrt(i, j) = s;
        }

      Matrix factor(dim, (k + 1) * p);  // B_u: M_u = B_u B_uᵀ
      for (int i = 0; i <= k; ++i) {
        for (int j = 0; j <= i; ++j) {
          const Matrix scaled = h_pow[i - j].transpose() * r_inv_sqrt;  // n x p
          for (int r = 0; r < n; ++r)
            for (int c = 0; c < p; ++c) factor(j * n + r, i * p + c) = scaled(r, c);
        }
      }

      Matrix m_u(dim, dim);
      for (int r = 0; r < dim; ++r) {
        for (int c = r; c < dim; ++c) {
          double s = 0.0;
          for (int e = 0; e < factor.cols(); ++e) s += factor(r, e) * factor(c, e);
          m_u(r, c) = m_u(c, r) = s;
        }
      }
      step.m_sensors.push_back(std::move(m_u));
      step.m_factors.push_back(std::move(factor));
    }
    horizon.steps.push_back(std::move(step));
  }
  return horizon;
}

double incremental_trace_gain(const InformationModel& model, const SensorSet& x, int u,
                              const Matrix& y_x) {
  if (u < 0 || u >= model.ground_size()) {
    throw PreconditionError("incremental_trace_gain: sensor index outside the ground set");
  }
  if (x.contains(u)) {
    throw PreconditionError("incremental_trace_gain: sensor " + std::to_string(u) +
                            " already selected");
  }
  if (y_x.rows() != model.dim() || y_x.cols() != model.dim()) {
    throw DimensionError("incremental_trace_gain: Y(X) has wrong shape");
  }

  const Matrix factor = u < static_cast<int>(model.m_factors.size()) &&
                                !model.m_factors[u].empty()
                            ? model.m_factors[u]
                            : psd_factor(model.m_sensors[u]);
  const int rank = factor.cols();
  if (rank == 0) return 0.0;  // null sensor contributes nothing

  // With M_u = B Bᵀ and C = Bᵀ Y(X):
  //   t(X) - t(X ∪ {u}) = trace[(I + C B)^(-1) C Cᵀ]
  const Matrix c = factor.transpose() * y_x;
  Matrix gram = c * factor;  // C B = Bᵀ Y B
  for (int i = 0; i < rank; ++i) gram(i, i) += 1.0;
  Matrix w(rank, rank);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      double s = 0.0;
      for (int e = 0; e < c.cols(); ++e) s += c(i, e) * c(j, e);
      w(i, j) = s;
    }
  const Cholesky chol(symmetrized(gram));
  return chol.solve(w).trace();
}

}  // namespace sensel
