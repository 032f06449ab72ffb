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

#include "sensel/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sensel {

namespace {

void check_theta(const HorizonModel& horizon, std::span<const double> theta) {
  if (horizon.steps.empty()) throw PreconditionError("certificate bounds need a non-empty horizon");
  if (theta.size() != horizon.steps.size()) {
    throw PreconditionError("theta length must match the number of horizon steps");
  }
}

Matrix total_information(const InformationModel& step) {
  Matrix total = step.m_empty;
  for (const Matrix& m : step.m_sensors) total += m;
  return total;
}

Matrix sensor_information_sum(const InformationModel& step) {
  Matrix sum(step.dim(), step.dim());
  for (const Matrix& m : step.m_sensors) sum += m;
  return sum;
}

}  // namespace

std::pair<double, std::vector<double>> alpha_bound_trace(const HorizonModel& horizon,
                                                         std::span<const double> theta) {
  check_theta(horizon, theta);
  std::vector<double> per_step;
  per_step.reserve(horizon.steps.size());
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < horizon.steps.size(); ++k) {
    const InformationModel& step = horizon.steps[k];
    const double numerator = lambda_min_psd(step.m_empty);
    const double denominator = lambda_max_psd(total_information(step));
    const double value = numerator / denominator;
    per_step.push_back(value);
    if (theta[k] > 0.0) alpha = std::min(alpha, value);
  }
  return {alpha, per_step};
}

NumRangeAlpha alpha_bound_numrange(const HorizonModel& horizon, std::span<const double> theta) {
  check_theta(horizon, theta);
  NumRangeAlpha out;
  out.alpha = std::numeric_limits<double>::infinity();
  out.delta = 0.0;
  for (std::size_t k = 0; k < horizon.steps.size(); ++k) {
    const InformationModel& step = horizon.steps[k];
    const SensorSet full = SensorSet::full(step.ground_size());
    const double y_empty_max = lambda_max_psd(evaluate_Y(step, SensorSet{}));
    const double y_full_min = lambda_min_psd(evaluate_Y(step, full));
    const double delta_k = (y_empty_max - y_full_min) / y_empty_max;
    out.per_step_alpha.push_back(1.0 - delta_k);
    if (theta[k] > 0.0) {
      out.alpha = std::min(out.alpha, 1.0 - delta_k);
      out.delta = std::max(out.delta, delta_k);
    }
  }
  return out;
}

std::pair<double, std::vector<double>> epsilon_bound_specnorm(const HorizonModel& horizon,
                                                              std::span<const double> theta) {
  check_theta(horizon, theta);
  std::vector<double> per_step;
  per_step.reserve(horizon.steps.size());
  double epsilon = 0.0;
  for (std::size_t k = 0; k < horizon.steps.size(); ++k) {
    const InformationModel& step = horizon.steps[k];
    const double top = lambda_max_psd(sensor_information_sum(step));
    const double bottom = lambda_min_psd(step.m_empty);
    const double value = top / (bottom * bottom);
    per_step.push_back(value);
    epsilon += theta[k] * value;
  }
  return {epsilon, per_step};
}

namespace {

CertificateReport assemble_report(const HorizonModel& horizon, const SelectionConfig& cfg,
                                  double alpha, std::vector<double> per_step_alpha,
                                  double epsilon, std::vector<double> per_step_epsilon) {
  CertificateReport report;
  report.kind = horizon.kind;
  report.r = cfg.steps();
  report.s = cfg.s;
  report.alpha_bound = std::clamp(alpha, 0.0, 1.0);
  report.per_step_alpha = std::move(per_step_alpha);
  report.epsilon_bound_raw = epsilon;
  report.epsilon_bound = std::max(epsilon, 0.0);
  report.per_step_epsilon = std::move(per_step_epsilon);

  const Guarantee g = guarantees(report.alpha_bound, report.epsilon_bound, 0.0, report.r, report.s);
  report.guarantee_multiplicative = g.multiplicative_factor;
  report.guarantee_additive_slack = report.s * report.epsilon_bound;

  const NumRangeAlpha num_range = alpha_bound_numrange(horizon, cfg.theta);
  report.numerical_range_delta = num_range.delta;

  for (const InformationModel& step : horizon.steps) {
    StepSpectral detail;
    detail.step = step.step;
    detail.lambda_min_m_empty = lambda_min_psd(step.m_empty);
    detail.lambda_max_m_total = lambda_max_psd(total_information(step));
    report.spectral_details.push_back(detail);
  }
  return report;
}

}  // namespace

CertificateReport filtering_certificates(const LinearSystem& sys, const SelectionConfig& cfg,
                                         CertificateSchedule schedule) {
  cfg.validate();
  if (cfg.kind != EstimationKind::filtering) {
    throw PreconditionError("filtering_certificates requires a filtering configuration");
  }
  const SensorSet schedule_set = schedule == CertificateSchedule::empty_set
                                     ? SensorSet{}
                                     : SensorSet::full(sys.num_sensors());
  const HorizonModel horizon = filtering_horizon(sys, schedule_set, cfg.m, cfg.N);
  auto [alpha, per_alpha] = alpha_bound_trace(horizon, cfg.theta);
  auto [epsilon, per_eps] = epsilon_bound_specnorm(horizon, cfg.theta);
  return assemble_report(horizon, cfg, alpha, std::move(per_alpha), epsilon,
                         std::move(per_eps));
}

CertificateReport smoothing_certificates(const LinearSystem& sys, const SelectionConfig& cfg) {
  cfg.validate();
  if (cfg.kind != EstimationKind::smoothing) {
    throw PreconditionError("smoothing_certificates requires a smoothing configuration");
  }
  const HorizonModel horizon = smoothing_horizon(sys, cfg.m, cfg.N, cfg.smoothing_dim_cap);

  // The lifted a priori information is block diagonal, so its smallest
  // eigenvalue is available analytically as 1 / max(lambda_max(Pi0), lambda_max(R_w)).
  const double l_max = std::max(lambda_max_sym(sys.Pi0), lambda_max_sym(sys.R_w));

  std::vector<double> per_alpha, per_eps;
  double alpha = std::numeric_limits<double>::infinity();
  double epsilon = 0.0;
  for (std::size_t k = 0; k < horizon.steps.size(); ++k) {
    const InformationModel& step = horizon.steps[k];
    const Matrix info_sum = sensor_information_sum(step);
    const double denom = lambda_max_psd(step.m_empty + info_sum);
    const double a = (1.0 / l_max) / denom;
    const double e = lambda_max_psd(info_sum) * l_max * l_max;
    per_alpha.push_back(a);
    per_eps.push_back(e);
    if (cfg.theta[k] > 0.0) alpha = std::min(alpha, a);
    epsilon += cfg.theta[k] * e;
  }
  return assemble_report(horizon, cfg, alpha, std::move(per_alpha), epsilon,
                         std::move(per_eps));
}

namespace {

/// Table of f over all subsets of a ground set of size p, indexed by bitmask.
std::vector<double> tabulate(const SetFunction& f, int p, int cap, const char* who) {
  if (p < 1) throw PreconditionError(std::string(who) + ": ground set must be non-empty");
  if (p > cap) {
    throw SizeError(std::string(who) + ": ground set of size " + std::to_string(p) +
                    " exceeds the enumeration cap of " + std::to_string(cap));
  }
  const std::uint32_t subsets = 1u << p;
  std::vector<double> table(subsets);
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    table[mask] = f(SensorSet::from_bitmask(mask));
  }
  return table;
}

}  // namespace

double alpha_exhaustive(const SetFunction& f, int ground_size, int cap) {
  const std::vector<double> table = tabulate(f, ground_size, cap, "alpha_exhaustive");
  const std::uint32_t subsets = 1u << ground_size;

  double alpha = std::numeric_limits<double>::infinity();
  bool monotonicity_violated = false;

  // B by subset rank, A over subsets of B, u over non-members of B. The gain
  // of u at A is table[A] - table[A | u].
  for (std::uint32_t b = 0; b < subsets; ++b) {
    for (std::uint32_t a = b;; a = (a - 1) & b) {
      for (int u = 0; u < ground_size; ++u) {
        const std::uint32_t bit = 1u << u;
        if (b & bit) continue;
        const double gain_a = table[a] - table[a | bit];
        const double gain_b = table[b] - table[b | bit];
        if (gain_a < -1e-12 || gain_b < -1e-12) monotonicity_violated = true;
        if (std::abs(gain_b) <= 1e-12) continue;  // vacuous comparison
        alpha = std::min(alpha, gain_a / gain_b);
      }
      if (a == 0) break;
    }
  }
  if (monotonicity_violated) return 0.0;
  if (!std::isfinite(alpha)) return 1.0;  // every gain is null: vacuously supermodular
  return alpha;
}

EpsilonExhaustive epsilon_exhaustive(const SetFunction& f, int ground_size, int cap) {
  const std::vector<double> table = tabulate(f, ground_size, cap, "epsilon_exhaustive");
  const std::uint32_t subsets = 1u << ground_size;

  double raw = -std::numeric_limits<double>::infinity();
  for (std::uint32_t b = 0; b < subsets; ++b) {
    for (std::uint32_t a = b;; a = (a - 1) & b) {
      for (int u = 0; u < ground_size; ++u) {
        const std::uint32_t bit = 1u << u;
        if (b & bit) continue;
        const double gain_a = table[a] - table[a | bit];
        const double gain_b = table[b] - table[b | bit];
        raw = std::max(raw, gain_b - gain_a);
      }
      if (a == 0) break;
    }
  }
  if (!std::isfinite(raw)) raw = 0.0;  // no admissible triple (|O| = 1 has A = B = empty only)
  EpsilonExhaustive out;
  out.raw = raw;
  out.value = std::max(raw, 0.0);
  return out;
}

Guarantee guarantees(double alpha, double epsilon, double f_opt_or_bound, int r, int s) {
  if (!(alpha >= 0.0) || alpha > 1.0 + 1e-12) {
    throw PreconditionError("guarantees: alpha must lie in [0, 1]");
  }
  if (!(epsilon >= 0.0)) throw PreconditionError("guarantees: epsilon must be nonnegative");
  if (r < 1 || s < 1) throw PreconditionError("guarantees: r and s must be at least 1");
  Guarantee g;
  const double ratio = static_cast<double>(r) / static_cast<double>(s);
  g.multiplicative_factor = 1.0 - std::exp(-alpha * ratio);
  g.additive_value = (1.0 - std::exp(-ratio)) * (f_opt_or_bound + s * epsilon);
  return g;
}

}  // namespace sensel
