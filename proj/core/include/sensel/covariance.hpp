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

#ifndef SENSEL_COVARIANCE_HPP
#define SENSEL_COVARIANCE_HPP

#include <vector>

#include "sensel/matrix.hpp"
#include "sensel/model.hpp"

namespace sensel {

enum class EstimationKind { filtering, smoothing };

/// Information-form description of the error covariance at one time step:
///   Y(X) = (M_empty + sum_{u in X} M_u)^(-1)
/// M_empty is the a priori information (positive definite) and each M_u is
/// the information contributed by sensor u (positive semidefinite).
struct InformationModel {
  Matrix m_empty;
  std::vector<Matrix> m_sensors;
  int step = 0;
  EstimationKind kind = EstimationKind::filtering;

  /// Optional PSD factors B_u with M_u = B_u B_uᵀ. Filled by the horizon
  /// builders; used to accelerate incremental trace gains. May be empty.
  std::vector<Matrix> m_factors;

  int ground_size() const { return static_cast<int>(m_sensors.size()); }
  int dim() const { return m_empty.rows(); }

  /// Checks M_empty > 0 and every M_u >= -1e-10 * lambda_max tolerance.
  void validate() const;
};

/// The per-step models over a selection horizon k = m ... m+N-1.
struct HorizonModel {
  std::vector<InformationModel> steps;
  int m = 0;
  int N = 0;
  EstimationKind kind = EstimationKind::filtering;
};

/// Error covariance for sensing set X. The information sum is accumulated in
/// ascending sensor order regardless of how X was built, so equal sets give
/// bitwise identical results.
Matrix evaluate_Y(const InformationModel& model, const SensorSet& x);

/// Sensor information matrix V_u = H_uᵀ R_{v,u}^(-1) H_u.
Matrix sensor_information(const Sensor& sensor);
std::vector<Matrix> sensor_information_all(const LinearSystem& sys);

/// Filtering models for steps k in [m, m+N): M_empty,k is the inverse of the
/// one-step prediction covariance P_{k|k-1}, M_{u,k} = V_u. The prediction
/// recursion runs from P_{0|-1} = Pi0 with the fixed schedule `x_schedule`
/// applied at every measurement update, so the models carry that schedule's
/// set-dependence.
HorizonModel filtering_horizon(const LinearSystem& sys, const SensorSet& x_schedule, int m,
                               int N);

/// Block lower-triangular (k+1)n x (k+1)n matrix with block (i,j) = F^(i-j)
/// for i >= j, zero above the diagonal.
Matrix smoothing_phi(const Matrix& f, int k);

/// Smoothing (batch trajectory) models for steps k in [m, m+N):
///   M_empty,k = blkdiag(Pi0, I (x) R_w)^(-1)
///   M_{u,k}   = Phi_kᵀ (I (x) V_u) Phi_k
/// The lifted dimension (m+N) n must stay within dim_cap.
HorizonModel smoothing_horizon(const LinearSystem& sys, int m, int N, int dim_cap = 2000);

/// Trace gain t(X) - t(X ∪ {u}) evaluated through the low-rank update
/// identity, reusing the already-computed Y(X). Requires u not in X.
double incremental_trace_gain(const InformationModel& model, const SensorSet& x, int u,
                              const Matrix& y_x);

/// Default lifted-dimension cap for smoothing horizons.
inline constexpr int kSmoothingDimCap = 2000;

}  // namespace sensel

#endif  // SENSEL_COVARIANCE_HPP
