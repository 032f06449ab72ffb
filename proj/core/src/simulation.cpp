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

#include "sensel/simulation.hpp"

#include <cmath>

#include "sensel/covariance.hpp"
#include "sensel/rng.hpp"

namespace sensel {

namespace {

/// Lower-triangular factor used to sample from N(0, C).
Matrix noise_factor(const Matrix& covariance) {
  const SymEig eig = sym_eig(covariance);
  const int n = covariance.rows();
  Matrix factor(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      factor(i, j) = eig.eigenvectors(i, j) * std::sqrt(std::max(eig.eigenvalues[j], 0.0));
  return factor;
}

std::vector<double> sample_gaussian(Rng& rng, const Matrix& factor) {
  std::vector<double> z(factor.cols());
  for (double& v : z) v = rng.normal();
  return factor * std::span<const double>(z);
}

}  // namespace

SimulationResult simulate_filter(const LinearSystem& sys, const SensorSet& x,
                                 std::span<const double> x0_true, int steps,
                                 std::uint64_t noise_seed,
                                 const std::vector<int>& probe_states) {
  if (static_cast<int>(x0_true.size()) != sys.n) {
    throw DimensionError("simulate_filter: initial state has wrong dimension");
  }
  if (steps < 1) throw PreconditionError("simulate_filter requires at least one step");
  for (int u : x.members()) {
    if (u >= sys.num_sensors()) {
      throw PreconditionError("simulate_filter: sensor index outside the ground set");
    }
  }

  Rng rng(noise_seed);
  const Matrix process_factor = noise_factor(sys.R_w);
  std::vector<Matrix> meas_factor;
  std::vector<Matrix> meas_info;   // H_uᵀ R_u^(-1)
  meas_factor.reserve(sys.sensors.size());
  meas_info.reserve(sys.sensors.size());
  for (const Sensor& s : sys.sensors) {
    meas_factor.push_back(noise_factor(s.R_v));
    meas_info.push_back(s.H.transpose() * psd_inverse(s.R_v));
  }
  const std::vector<Matrix> v_all = sensor_information_all(sys);

  Matrix v_sum(sys.n, sys.n);
  for (int u : x.members()) v_sum += v_all[u];

  SimulationResult result;
  result.probe_truth.resize(probe_states.size());
  result.probe_estimate.resize(probe_states.size());

  std::vector<double> truth(x0_true.begin(), x0_true.end());
  std::vector<double> predicted(sys.n, 0.0);  // x_hat_{0|-1} = 0 (the prior mean)
  Matrix prior = sys.Pi0;

  double total_error = 0.0;
  for (int k = 0; k < steps; ++k) {
    // Draw every noise stream each step so realizations do not depend on
    // which sensors happen to be selected.
    const std::vector<double> w = sample_gaussian(rng, process_factor);
    std::vector<std::vector<double>> measurements(sys.sensors.size());
    for (std::size_t u = 0; u < sys.sensors.size(); ++u) {
      std::vector<double> y = sys.sensors[u].H * std::span<const double>(truth);
      const std::vector<double> v = sample_gaussian(rng, meas_factor[u]);
      for (std::size_t i = 0; i < y.size(); ++i) y[i] += v[i];
      measurements[u] = std::move(y);
    }

    std::vector<double> estimate;
    Matrix posterior;
    if (x.empty()) {
      estimate = predicted;
      posterior = prior;
    } else {
      const Matrix prior_info = spd_inverse(prior);
      Matrix info = prior_info + v_sum;
      std::vector<double> rhs = prior_info * std::span<const double>(predicted);
      for (int u : x.members()) {
        const std::vector<double> contrib =
            meas_info[u] * std::span<const double>(measurements[u]);
        for (int i = 0; i < sys.n; ++i) rhs[i] += contrib[i];
      }
      const Cholesky chol(info);
      estimate = chol.solve(rhs);
      posterior = symmetrized(chol.inverse());
    }

    double err = 0.0;
    for (int i = 0; i < sys.n; ++i) {
      const double d = estimate[i] - truth[i];
      err += d * d;
    }
    result.per_step_sq_error.push_back(err);
    total_error += err;

    for (std::size_t p = 0; p < probe_states.size(); ++p) {
      result.probe_truth[p].push_back(truth[probe_states[p]]);
      result.probe_estimate[p].push_back(estimate[probe_states[p]]);
    }

    // Propagate truth and filter to the next step.
    std::vector<double> next_truth = sys.F * std::span<const double>(truth);
    for (int i = 0; i < sys.n; ++i) next_truth[i] += w[i];
    truth = std::move(next_truth);
    predicted = sys.F * std::span<const double>(estimate);
    prior = symmetrized(sys.F * posterior * sys.F.transpose() + sys.R_w);
  }

  result.mean_squared_error = total_error / steps;
  return result;
}

}  // namespace sensel
