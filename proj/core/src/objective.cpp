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

#include "sensel/objective.hpp"

#include <cmath>
#include <string>

namespace sensel {

std::string to_string(Scalarization h) {
  switch (h) {
    case Scalarization::trace: return "trace";
    case Scalarization::specnorm: return "specnorm";
    case Scalarization::logdet: return "logdet";
  }
  return "unknown";
}

std::string to_string(EstimationKind kind) {
  return kind == EstimationKind::filtering ? "filtering" : "smoothing";
}

void SelectionConfig::validate() const {
  if (m < 0) throw ConfigError("start step m must be nonnegative");
  if (N < 1) throw ConfigError("horizon N must be at least 1");
  if (static_cast<int>(theta.size()) != N) {
    throw ConfigError("theta must have exactly N entries");
  }
  bool any_positive = false;
  for (double t : theta) {
    if (t < 0.0) throw ConfigError("step weights must be nonnegative");
    if (t > 0.0) any_positive = true;
  }
  if (!any_positive) throw ConfigError("at least one step weight must be positive");
  if (s < 1) throw ConfigError("budget s must be at least 1");
  if (r < 0) throw ConfigError("greedy step count r must be nonnegative");
}

std::vector<double> weights_final(int n_steps) {
  std::vector<double> w(n_steps, 0.0);
  w.back() = 1.0;
  return w;
}

std::vector<double> weights_average(int n_steps) {
  return std::vector<double>(n_steps, 1.0);
}

std::vector<double> weights_geometric(int n_steps, double rho) {
  if (!(rho > 0.0)) throw ConfigError("geometric weight ratio must be positive");
  std::vector<double> w(n_steps);
  for (int k = 0; k < n_steps; ++k) w[k] = std::pow(rho, n_steps - 1 - k);
  return w;
}

double scalarize(Scalarization h, const Matrix& y) {
  if (!y.is_square()) throw DimensionError("scalarize requires a square matrix");
  switch (h) {
    case Scalarization::trace:
      return y.trace();
    case Scalarization::specnorm:
      return lambda_max_psd(y);
    case Scalarization::logdet: {
      const SymEig eig = sym_eig(y);
      if (eig.eigenvalues.front() <= 0.0) {
        throw PreconditionError("logdet requires a positive definite matrix");
      }
      double s = 0.0;
      for (double lambda : eig.eigenvalues) s += std::log(lambda);
      return s;
    }
  }
  throw ConfigError("unknown scalarization");
}

namespace {

/// h applied to a posterior covariance available both as the matrix itself
/// and (when it came from an inversion) the factorization of its inverse.
double scalarize_step(Scalarization h, const Matrix& y, const Cholesky* info_chol) {
  switch (h) {
    case Scalarization::trace:
      return y.trace();
    case Scalarization::specnorm:
      return lambda_max_psd(y);
    case Scalarization::logdet:
      if (info_chol != nullptr) return -info_chol->log_det();
      return Cholesky(y).log_det();
  }
  throw ConfigError("unknown scalarization");
}

}  // namespace

ObjectiveEvaluator::ObjectiveEvaluator(const LinearSystem& sys, const SelectionConfig& cfg)
    : cfg_(cfg), f_(sys.F), r_w_(sys.R_w), pi0_(sys.Pi0) {
  cfg_.validate();
  if (sys.n < 1) throw ConfigError("system has no states");
  v_all_ = sensor_information_all(sys);

  if (cfg_.kind == EstimationKind::smoothing) {
    fixed_horizon_ = smoothing_horizon(sys, cfg_.m, cfg_.N, cfg_.smoothing_dim_cap);
  } else if (cfg_.m == 0 && cfg_.N == 1) {
    fixed_horizon_ = filtering_horizon(sys, SensorSet{}, 0, 1);
  }
  c_empty_ = raw_value(SensorSet{});
}

bool ObjectiveEvaluator::supports_gain_acceleration() const {
  return cfg_.scalarization == Scalarization::trace && fixed_horizon_.has_value();
}

double ObjectiveEvaluator::value(const SensorSet& x) const {
  return raw_value(x) - c_empty_;
}

double ObjectiveEvaluator::raw_value(const SensorSet& x) const {
  for (int u : x.members()) {
    if (u >= ground_size()) {
      throw PreconditionError("sensor index " + std::to_string(u) +
                              " outside the ground set");
    }
  }
  if (!fixed_horizon_) return filtering_raw(x);

  double total = 0.0;
  for (int k = 0; k < cfg_.N; ++k) {
    const double weight = cfg_.theta[k];
    if (weight == 0.0) continue;
    const InformationModel& step = fixed_horizon_->steps[k];
    Matrix info = step.m_empty;
    for (int u : x.members()) info += step.m_sensors[u];
    const Cholesky chol(info);
    double h;
    if (cfg_.scalarization == Scalarization::trace) {
      h = chol.trace_of_inverse();
    } else if (cfg_.scalarization == Scalarization::logdet) {
      h = -chol.log_det();
    } else {
      h = lambda_max_psd(symmetrized(chol.inverse()));
    }
    total += weight * h;
  }
  return total;
}

double ObjectiveEvaluator::filtering_raw(const SensorSet& x) const {
  Matrix v_sum;
  if (!x.empty()) {
    v_sum = v_all_[x.members().front()];
    for (std::size_t i = 1; i < x.members().size(); ++i) v_sum += v_all_[x.members()[i]];
  }

  double total = 0.0;
  Matrix prior = pi0_;  // P_{0|-1}
  for (int k = 0; k < cfg_.m + cfg_.N; ++k) {
    Matrix posterior;
    std::optional<Cholesky> info_chol;
    if (x.empty()) {
      posterior = prior;
    } else {
      Matrix info = spd_inverse(prior);
      info += v_sum;
      info_chol.emplace(info);
      posterior = symmetrized(info_chol->inverse());
    }
    if (k >= cfg_.m) {
      const double weight = cfg_.theta[k - cfg_.m];
      if (weight != 0.0) {
        total += weight * scalarize_step(cfg_.scalarization, posterior,
                                         info_chol ? &*info_chol : nullptr);
      }
    }
    prior = symmetrized(f_ * posterior * f_.transpose() + r_w_);
  }
  return total;
}

ObjectiveValue objective(const LinearSystem& sys, const SelectionConfig& cfg,
                         const SensorSet& x) {
  return ObjectiveEvaluator(sys, cfg).objective(x);
}

HorizonObjective::HorizonObjective(HorizonModel horizon, std::vector<double> theta,
                                   Scalarization h)
    : horizon_(std::move(horizon)), theta_(std::move(theta)), h_(h) {
  if (horizon_.steps.empty()) throw PreconditionError("horizon has no steps");
  if (theta_.size() != horizon_.steps.size()) {
    throw PreconditionError("theta length must match the number of horizon steps");
  }
  c_empty_ = raw_value(SensorSet{});
}

double HorizonObjective::raw_value(const SensorSet& x) const {
  double total = 0.0;
  for (std::size_t k = 0; k < horizon_.steps.size(); ++k) {
    if (theta_[k] == 0.0) continue;
    total += theta_[k] * scalarize(h_, evaluate_Y(horizon_.steps[k], x));
  }
  return total;
}

double HorizonObjective::value(const SensorSet& x) const {
  return raw_value(x) - c_empty_;
}

double modular_reference_objective(const LinearSystem& sys, const SelectionConfig& cfg,
                                   const SensorSet& x) {
  cfg.validate();
  const HorizonModel horizon =
      cfg.kind == EstimationKind::smoothing
          ? smoothing_horizon(sys, cfg.m, cfg.N, cfg.smoothing_dim_cap)
          : filtering_horizon(sys, SensorSet{}, cfg.m, cfg.N);

  const int p = sys.num_sensors();
  std::vector<double> weights(p, 0.0);
  double total_mass = 0.0;
  for (int u = 0; u < p; ++u) {
    double w = 0.0;
    for (int k = 0; k < cfg.N; ++k) w += cfg.theta[k] * horizon.steps[k].m_sensors[u].trace();
    weights[u] = w;
    total_mass += std::abs(w);
  }

  // Round the per-sensor weights to a common power-of-two grid: every subset
  // sum is then exact in double precision and the function exactly modular.
  int exponent = 0;
  std::frexp(total_mass + 1.0, &exponent);
  const double grid = std::ldexp(1.0, exponent - 52);
  double value = 0.0;
  for (int u : x.members()) {
    if (u >= p) throw PreconditionError("sensor index outside the ground set");
    value -= std::nearbyint(weights[u] / grid) * grid;
  }
  return value;
}

}  // namespace sensel
