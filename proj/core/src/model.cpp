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

#include "sensel/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sensel/rng.hpp"

namespace sensel {

namespace {

void check_spd(const Matrix& m, int expected_dim, const char* name) {
  if (!m.is_square() || m.rows() != expected_dim) {
    throw DimensionError(std::string(name) + " has wrong shape");
  }
  const double lmax = lambda_max_sym(m);
  const double lmin = lambda_min_sym(m);
  if (lmin <= 1e-12 * std::max(1.0, lmax)) {
    throw ConfigError(std::string(name) + " must be positive definite (lambda_min = " +
                      std::to_string(lmin) + ")");
  }
}

}  // namespace

void LinearSystem::validate() const {
  if (n < 1) throw ConfigError("state dimension must be at least 1");
  if (!F.is_square() || F.rows() != n) throw DimensionError("F must be n x n");
  check_spd(R_w, n, "R_w");
  check_spd(Pi0, n, "Pi0");
  for (std::size_t u = 0; u < sensors.size(); ++u) {
    const Sensor& s = sensors[u];
    if (s.H.cols() != n) {
      throw DimensionError("sensor " + std::to_string(u) + ": H must have n columns");
    }
    if (s.H.rows() < 1) {
      throw DimensionError("sensor " + std::to_string(u) + ": H must have at least one row");
    }
    check_spd(s.R_v, s.H.rows(), ("sensor " + std::to_string(u) + " R_v").c_str());
  }
}

SensorSet SensorSet::of(std::vector<int> members) {
  std::sort(members.begin(), members.end());
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] < 0) throw PreconditionError("sensor index must be nonnegative");
    if (i > 0 && members[i] == members[i - 1]) {
      throw PreconditionError("duplicate sensor index " + std::to_string(members[i]));
    }
  }
  SensorSet s;
  s.members_ = std::move(members);
  return s;
}

SensorSet SensorSet::full(int ground_size) {
  SensorSet s;
  s.members_.resize(ground_size);
  for (int i = 0; i < ground_size; ++i) s.members_[i] = i;
  return s;
}

SensorSet SensorSet::from_bitmask(std::uint32_t mask) {
  SensorSet s;
  for (int i = 0; i < 32; ++i)
    if (mask & (1u << i)) s.members_.push_back(i);
  return s;
}

bool SensorSet::contains(int u) const {
  return std::binary_search(members_.begin(), members_.end(), u);
}

SensorSet SensorSet::with(int u) const {
  if (contains(u)) {
    throw PreconditionError("sensor " + std::to_string(u) + " already in set");
  }
  SensorSet s = *this;
  s.members_.insert(std::upper_bound(s.members_.begin(), s.members_.end(), u), u);
  return s;
}

std::uint32_t SensorSet::bitmask() const {
  std::uint32_t mask = 0;
  for (int u : members_) {
    if (u >= 32) throw PreconditionError("bitmask supports sensor indices below 32");
    mask |= 1u << u;
  }
  return mask;
}

LinearSystem random_system(int n, int p, double target_norm, double sigma_w2,
                           std::pair<double, double> sigma_v2_range, OutputMode mode,
                           std::uint64_t rng_seed, double pi0_scale) {
  if (n < 1 || p < 1) throw ConfigError("random_system requires n >= 1 and p >= 1");
  if (!(target_norm > 0.0)) {
    throw ConfigError("random_system requires a positive target spectral norm");
  }
  if (!(sigma_w2 > 0.0) || !(pi0_scale > 0.0)) {
    throw ConfigError("random_system noise scales must be positive");
  }
  const auto [v_lo, v_hi] = sigma_v2_range;
  if (!(v_lo > 0.0) || v_hi < v_lo) {
    throw ConfigError("random_system sigma_v2 range must be positive and ordered");
  }
  if (mode == OutputMode::canonical && p > n) {
    throw ConfigError("canonical outputs require p <= n");
  }

  Rng rng(rng_seed);

  LinearSystem sys;
  sys.n = n;
  sys.F = Matrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sys.F(i, j) = rng.normal();

  const double raw_norm = spectral_norm(sys.F);
  if (!(raw_norm > 0.0)) throw NumericalError("degenerate random state matrix draw");
  sys.F *= target_norm / raw_norm;

  sys.R_w = Matrix::scaled_identity(n, sigma_w2);
  sys.Pi0 = Matrix::scaled_identity(n, pi0_scale);

  sys.sensors.reserve(p);
  for (int u = 0; u < p; ++u) {
    Sensor s;
    s.H = Matrix(1, n);
    if (mode == OutputMode::canonical) {
      s.H(0, u) = 1.0;
    } else {
      for (int j = 0; j < n; ++j) s.H(0, j) = rng.normal();
    }
    s.R_v = Matrix(1, 1);
    s.R_v(0, 0) = rng.uniform(v_lo, v_hi);
    sys.sensors.push_back(std::move(s));
  }
  return sys;
}

std::vector<int> RiverTree::sensor_sites() const {
  std::vector<int> out;
  for (int i = 0; i < num_nodes(); ++i)
    if (nodes[i].sensor_site) out.push_back(i);
  return out;
}

std::vector<std::vector<int>> RiverTree::sensor_levels() const {
  int max_level = 0;
  for (const auto& node : nodes)
    if (node.sensor_site) max_level = std::max(max_level, node.level);
  std::vector<std::vector<int>> levels(max_level + 1);
  for (int i = 0; i < num_nodes(); ++i)
    if (nodes[i].sensor_site) levels[nodes[i].level].push_back(i);
  return levels;
}

int RiverTree::head_node() const {
  int best = root;
  int best_level = -1;
  for (int i = 0; i < num_nodes(); ++i) {
    if (nodes[i].sensor_site && nodes[i].level > best_level) {
      best = i;
      best_level = nodes[i].level;
    }
  }
  return best;
}

bool RiverTree::connected() const {
  const int n = num_nodes();
  if (n == 0) return false;
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : edges) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::vector<char> seen(n, 0);
  std::vector<int> stack{root};
  seen[root] = 1;
  int count = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    ++count;
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

RiverTree synth_river_tree(int levels, int branching, std::uint64_t rng_seed) {
  if (levels < 1) throw PreconditionError("synth_river_tree requires levels >= 1");
  if (branching < 1) throw PreconditionError("synth_river_tree requires branching >= 1");

  Rng rng(rng_seed);
  RiverTree tree;
  tree.root = 0;
  tree.nodes.push_back(RiverNode{0.0, 0.0, true, 0});

  struct Frontier {
    int id;
    double angle;  // direction this branch grows in
  };
  std::vector<Frontier> frontier{{0, std::numbers::pi / 2.0}};

  for (int depth = 1; depth < levels; ++depth) {
    std::vector<Frontier> next;
    for (const Frontier& parent : frontier) {
      for (int c = 0; c < branching; ++c) {
        // Children fan out around the parent direction with seeded jitter.
        const double spread = branching > 1
                                  ? (static_cast<double>(c) / (branching - 1) - 0.5) * 1.4
                                  : 0.0;
        const double jitter = rng.uniform(-0.15, 0.15);
        const double angle = parent.angle + spread + jitter;

        // Copy the parent position: push_back below may reallocate the nodes.
        const double parent_x = tree.nodes[parent.id].x;
        const double parent_y = tree.nodes[parent.id].y;

        RiverNode child;
        child.x = parent_x + std::cos(angle);
        child.y = parent_y + std::sin(angle);
        child.sensor_site = true;
        child.level = depth;
        const int child_id = tree.num_nodes();
        tree.nodes.push_back(child);

        RiverNode mid;
        mid.x = 0.5 * (child.x + parent_x);
        mid.y = 0.5 * (child.y + parent_y);
        mid.sensor_site = false;
        mid.level = depth;
        const int mid_id = tree.num_nodes();
        tree.nodes.push_back(mid);

        // Flow is oriented downstream: child -> midpoint -> parent.
        tree.edges.push_back(RiverEdge{child_id, mid_id});
        tree.edges.push_back(RiverEdge{mid_id, parent.id});

        next.push_back(Frontier{child_id, angle});
      }
    }
    frontier = std::move(next);
  }
  return tree;
}

BasinSystem basin_system(const RiverTree& tree, double sigma_sq, double dt,
                         double advect_coeff, double diffuse_coeff, double sigma_w2,
                         double sigma_v2) {
  if (!(sigma_sq > 0.0) || !(dt > 0.0) || !(advect_coeff > 0.0) || !(diffuse_coeff > 0.0) ||
      !(sigma_w2 > 0.0) || !(sigma_v2 > 0.0)) {
    throw ConfigError("basin_system coefficients must be positive");
  }
  if (!tree.connected()) throw ConfigError("basin_system requires a connected tree");

  const int n = tree.num_nodes();
  Matrix adjacency(n, n);
  for (const auto& e : tree.edges) {
    const double dx = tree.nodes[e.from].x - tree.nodes[e.to].x;
    const double dy = tree.nodes[e.from].y - tree.nodes[e.to].y;
    adjacency(e.from, e.to) = std::exp(-(dx * dx + dy * dy) / sigma_sq);
  }

  Matrix laplacian(n, n);
  {
    Matrix degree(n, n);
    for (int j = 0; j < n; ++j) {
      double col = 0.0;
      for (int i = 0; i < n; ++i) col += adjacency(i, j);
      degree(j, j) = col;
    }
    laplacian = degree - adjacency;
  }

  Matrix sym_laplacian(n, n);
  {
    const Matrix both = adjacency + adjacency.transpose();
    Matrix degree(n, n);
    for (int j = 0; j < n; ++j) {
      double col = 0.0;
      for (int i = 0; i < n; ++i) col += both(i, j);
      degree(j, j) = col;
    }
    sym_laplacian = degree - both;
  }

  BasinSystem out;
  out.system.n = n;
  out.system.F = advect_coeff * matrix_exp(-dt * laplacian) +
                 diffuse_coeff * matrix_exp(-dt * sym_laplacian);
  out.system.R_w = Matrix::scaled_identity(n, sigma_w2);
  out.system.Pi0 = Matrix::identity(n);

  out.sensor_nodes = tree.sensor_sites();
  for (int node : out.sensor_nodes) {
    Sensor s;
    s.H = Matrix(1, n);
    s.H(0, node) = 1.0;
    s.R_v = Matrix(1, 1);
    s.R_v(0, 0) = sigma_v2;
    out.system.sensors.push_back(std::move(s));
  }
  return out;
}

std::vector<std::vector<int>> basin_strata(const RiverTree& tree,
                                           const std::vector<int>& sensor_nodes, int s) {
  if (s < 1 || s > static_cast<int>(sensor_nodes.size())) {
    throw ConfigError("basin_strata requires 1 <= s <= number of sensors");
  }
  std::vector<int> node_to_sensor(tree.num_nodes(), -1);
  for (std::size_t i = 0; i < sensor_nodes.size(); ++i) {
    node_to_sensor[sensor_nodes[i]] = static_cast<int>(i);
  }

  // Per-level sensor indices, deepest level first.
  std::vector<std::vector<int>> levels;
  for (const auto& level_nodes : tree.sensor_levels()) {
    std::vector<int> level;
    for (int node : level_nodes) {
      if (node_to_sensor[node] >= 0) level.push_back(node_to_sensor[node]);
    }
    if (!level.empty()) levels.push_back(std::move(level));
  }
  std::reverse(levels.begin(), levels.end());

  std::vector<std::vector<int>> strata;
  std::vector<int> used(levels.size(), 0);
  while (static_cast<int>(strata.size()) < s) {
    bool progressed = false;
    for (std::size_t i = 0; i < levels.size() && static_cast<int>(strata.size()) < s; ++i) {
      if (used[i] < static_cast<int>(levels[i].size())) {
        strata.push_back(levels[i]);
        ++used[i];
        progressed = true;
      }
    }
    if (!progressed) throw ConfigError("basin_strata: not enough sensors for the budget");
  }
  return strata;
}

}  // namespace sensel
