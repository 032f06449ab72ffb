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

#ifndef SENSEL_CERTIFICATES_HPP
#define SENSEL_CERTIFICATES_HPP

#include <functional>
#include <utility>
#include <vector>

#include "sensel/covariance.hpp"
#include "sensel/model.hpp"
#include "sensel/objective.hpp"

namespace sensel {

/// Spectral quantities entering the per-step bounds.
struct StepSpectral {
  int step = 0;
  double lambda_min_m_empty = 0.0;
  double lambda_max_m_total = 0.0;  // lambda_max(M_empty + sum_u M_u)
};

/// Near-optimality certificate for greedy selection: a lower bound alpha on
/// the multiplicative diminishing-returns constant of the trace objective and
/// an upper bound epsilon on the additive constant of the spectral-norm
/// objective, together with the guarantee factors they imply.
struct CertificateReport {
  EstimationKind kind = EstimationKind::filtering;
  int r = 0;
  int s = 0;

  double alpha_bound = 0.0;    // min over weighted steps, in [0, 1]
  double epsilon_bound = 0.0;  // theta-weighted sum over steps, >= 0
  std::vector<double> per_step_alpha;
  std::vector<double> per_step_epsilon;

  double guarantee_multiplicative = 0.0;  // 1 - exp(-alpha r / s)
  double guarantee_additive_slack = 0.0;  // s * epsilon

  double numerical_range_delta = 0.0;  // relative spread of the covariance range
  double epsilon_bound_raw = 0.0;      // epsilon before clamping at zero

  std::vector<StepSpectral> spectral_details;
};

/// alpha >= lambda_min(M_empty,k) / lambda_max(M_empty,k + sum_u M_u,k),
/// minimized over the steps with positive weight.
std::pair<double, std::vector<double>> alpha_bound_trace(const HorizonModel& horizon,
                                                         std::span<const double> theta);

struct NumRangeAlpha {
  double alpha = 0.0;  // min over weighted steps of 1 - delta_k
  double delta = 0.0;  // max over weighted steps of delta_k
  std::vector<double> per_step_alpha;
};

/// The same bound derived from the numerical range of the covariance set
/// function: delta_k = (lambda_max(Y_k(empty)) - lambda_min(Y_k(O))) / lambda_max(Y_k(empty)).
/// Computed through the covariance matrices themselves, so it cross-checks
/// alpha_bound_trace by an independent arithmetic route.
NumRangeAlpha alpha_bound_numrange(const HorizonModel& horizon, std::span<const double> theta);

/// epsilon <= sum_k theta_k lambda_max(sum_u M_u,k) / lambda_min(M_empty,k)^2.
std::pair<double, std::vector<double>> epsilon_bound_specnorm(const HorizonModel& horizon,
                                                              std::span<const double> theta);

/// Schedule under which the prediction covariances entering the filtering
/// certificate are propagated. The empty schedule maximizes the covariance in
/// the Loewner order and therefore yields the conservative (valid) bound.
enum class CertificateSchedule { empty_set, full_set };

CertificateReport filtering_certificates(const LinearSystem& sys, const SelectionConfig& cfg,
                                         CertificateSchedule schedule = CertificateSchedule::empty_set);

CertificateReport smoothing_certificates(const LinearSystem& sys, const SelectionConfig& cfg);

using SetFunction = std::function<double(const SensorSet&)>;

/// Exact multiplicative diminishing-returns constant by enumeration of all
/// (A subset of B, u outside B) triples. Ground sets above the cap are size
/// errors; a monotonicity violation forces a reported value of zero.
double alpha_exhaustive(const SetFunction& f, int ground_size, int cap = 10);

struct EpsilonExhaustive {
  double value = 0.0;  // clamped at zero
  double raw = 0.0;    // possibly negative for strictly supermodular functions
};

/// Exact additive constant by the same enumeration.
EpsilonExhaustive epsilon_exhaustive(const SetFunction& f, int ground_size, int cap = 10);

struct Guarantee {
  double multiplicative_factor = 0.0;  // 1 - exp(-alpha r / s)
  double additive_value = 0.0;         // (1 - exp(-r/s)) (f_opt + s epsilon)
};

Guarantee guarantees(double alpha, double epsilon, double f_opt_or_bound, int r, int s);

}  // namespace sensel

#endif  // SENSEL_CERTIFICATES_HPP
