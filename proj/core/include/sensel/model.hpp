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

#ifndef SENSEL_MODEL_HPP
#define SENSEL_MODEL_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "sensel/matrix.hpp"

namespace sensel {

/// One candidate sensor: output matrix H (p_u x n) and measurement noise
/// covariance R_v (p_u x p_u, symmetric positive definite).
struct Sensor {
  Matrix H;
  Matrix R_v;
};

/// Discrete-time linear dynamical system
///   x_{k+1} = F x_k + w_k,          w_k ~ N(0, R_w)
///   y_{u,k} = H_u x_k + v_{u,k},    v_{u,k} ~ N(0, R_{v,u})
/// with Gaussian initial state of covariance Pi0. The ground set of the
/// selection problem is the index range of `sensors`.
struct LinearSystem {
  int n = 0;
  Matrix F;
  Matrix R_w;
  Matrix Pi0;
  std::vector<Sensor> sensors;

  int num_sensors() const { return static_cast<int>(sensors.size()); }

  /// Checks shapes and positive definiteness of R_w, Pi0, and every R_v.
  /// Throws ConfigError/DimensionError on violation.
  void validate() const;
};

/// Subset of sensor indices, kept sorted and duplicate-free.
class SensorSet {
 public:
  SensorSet() = default;

  /// Sorts the given indices; duplicates or negatives are precondition errors.
  static SensorSet of(std::vector<int> members);
  static SensorSet full(int ground_size);
  static SensorSet from_bitmask(std::uint32_t mask);

  const std::vector<int>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  bool contains(int u) const;

  /// Returns a copy with u inserted; u already present is a precondition error.
  SensorSet with(int u) const;

  std::uint32_t bitmask() const;  // requires indices < 32

  friend bool operator==(const SensorSet& a, const SensorSet& b) {
    return a.members_ == b.members_;
  }

 private:
  std::vector<int> members_;
};

enum class OutputMode { canonical, gaussian };

/// Random system family: Gaussian F scaled to the requested spectral norm,
/// p scalar sensors that either read one state directly (canonical) or mix
/// all states with Gaussian weights, R_w = sigma_w2 * I, Pi0 = pi0_scale * I.
/// Per-sensor noise variances are drawn uniformly from sigma_v2_range.
LinearSystem random_system(int n, int p, double target_norm, double sigma_w2,
                           std::pair<double, double> sigma_v2_range, OutputMode mode,
                           std::uint64_t rng_seed, double pi0_scale = 1e-2);

struct RiverNode {
  double x = 0.0;
  double y = 0.0;
  bool sensor_site = false;
  int level = 0;  // depth of the nearest downstream sensor-site generation
};

/// Directed edge, oriented with the flow (upstream node -> downstream node).
struct RiverEdge {
  int from = 0;
  int to = 0;
};

/// Directed tree draining into a single root ("ocean"). Sensor-site nodes
/// alternate with midpoint nodes along every branch.
struct RiverTree {
  std::vector<RiverNode> nodes;
  std::vector<RiverEdge> edges;
  int root = 0;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  std::vector<int> sensor_sites() const;
  /// Sensor-site node ids grouped by tree level (level 0 = root).
  std::vector<std::vector<int>> sensor_levels() const;
  /// Deterministic most-upstream sensor site (deepest level, lowest id).
  int head_node() const;
  bool connected() const;
};

/// Synthetic river network: a complete `branching`-ary tree with `levels`
/// generations of sensor sites, one midpoint node on every edge, children
/// placed at unit distance from their parent with seeded angle jitter.
RiverTree synth_river_tree(int levels, int branching, std::uint64_t rng_seed);

struct BasinSystem {
  LinearSystem system;
  std::vector<int> sensor_nodes;  // node id of each sensor, in sensor order
};

/// Advection-diffusion dynamics on a river tree:
///   A_ij  = exp(-||z_i - z_j||^2 / sigma_sq) on flow edges
///   L     = D - A            (D = column sums of A)
///   L'    = D' - (A + Aᵀ)    (D' = column sums of A + Aᵀ)
///   F     = advect_coeff * exp(-L dt) + diffuse_coeff * exp(-L' dt)
/// Every sensor-site node gets a direct noisy reading of its own state.
BasinSystem basin_system(const RiverTree& tree, double sigma_sq, double dt,
                         double advect_coeff, double diffuse_coeff, double sigma_w2,
                         double sigma_v2);

/// Strata of sensor indices for the level-stratified random baseline: one
/// stratum per pick, cycling through the tree levels deepest-first and
/// skipping levels whose sensors are already fully committed. Requires
/// s <= number of sensors.
std::vector<std::vector<int>> basin_strata(const RiverTree& tree,
                                           const std::vector<int>& sensor_nodes, int s);

}  // namespace sensel

#endif  // SENSEL_MODEL_HPP
