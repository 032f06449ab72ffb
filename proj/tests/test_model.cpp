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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sensel/model.hpp"
#include "sensel/objective.hpp"
#include "sensel/selection.hpp"
#include "sensel/system_io.hpp"
#include "test_support.hpp"

using namespace sensel;

TEST_CASE("SensorSet keeps members sorted and rejects duplicates") {
  const SensorSet s = SensorSet::of({3, 0, 2});
  CHECK(s.members() == std::vector<int>{0, 2, 3});
  CHECK(s.contains(2));
  CHECK_FALSE(s.contains(1));
  CHECK(s.with(1).members() == std::vector<int>{0, 1, 2, 3});
  CHECK_THROWS_AS(SensorSet::of({1, 1}), PreconditionError);
  CHECK_THROWS_AS(s.with(3), PreconditionError);
  CHECK(SensorSet::from_bitmask(0b1011u).members() == std::vector<int>{0, 1, 3});
  CHECK(SensorSet::of({0, 1, 3}).bitmask() == 0b1011u);
}

TEST_CASE("random_system at the canonical large-ensemble parameters") {
  const LinearSystem sys =
      random_system(100, 100, 0.9, 0.01, {1.0, 1.0}, OutputMode::canonical, 42);
  CHECK(sys.n == 100);
  CHECK(sys.num_sensors() == 100);
  CHECK(spectral_norm(sys.F) == doctest::Approx(0.9).epsilon(1e-9));
  CHECK(sys.Pi0(0, 0) == doctest::Approx(1e-2));
  CHECK(sys.R_w(0, 0) == doctest::Approx(0.01));
  for (int u = 0; u < sys.num_sensors(); ++u) {
    CHECK(sys.sensors[u].H(0, u) == 1.0);
    CHECK(sys.sensors[u].R_v(0, 0) == doctest::Approx(1.0));
  }
  sys.validate();
}

TEST_CASE("random_system gaussian family draws dense outputs and noise range") {
  const LinearSystem sys =
      random_system(10, 10, 0.9, 1e-2, {1e-2, 1.0}, OutputMode::gaussian, 7);
  CHECK(spectral_norm(sys.F) == doctest::Approx(0.9).epsilon(1e-9));
  for (const Sensor& s : sys.sensors) {
    CHECK(s.H.rows() == 1);
    CHECK(s.H.cols() == 10);
    double mass = 0.0;
    for (int j = 0; j < 10; ++j) mass += std::abs(s.H(0, j));
    CHECK(mass > 0.0);
    CHECK(s.R_v(0, 0) >= 1e-2);
    CHECK(s.R_v(0, 0) <= 1.0);
  }
  sys.validate();
}

TEST_CASE("random_system rejects degenerate configurations") {
  CHECK_THROWS_AS(random_system(5, 5, 0.0, 1e-2, {1.0, 1.0}, OutputMode::canonical, 1),
                  ConfigError);
  CHECK_THROWS_AS(random_system(3, 5, 0.9, 1e-2, {1.0, 1.0}, OutputMode::canonical, 1),
                  ConfigError);
  CHECK_THROWS_AS(random_system(5, 5, 0.9, 1e-2, {1.0, 0.5}, OutputMode::canonical, 1),
                  ConfigError);
}

TEST_CASE("random_system is bit-reproducible for a fixed seed") {
  const LinearSystem a = random_system(8, 6, 0.5, 1e-2, {0.1, 2.0}, OutputMode::gaussian, 99);
  const LinearSystem b = random_system(8, 6, 0.5, 1e-2, {0.1, 2.0}, OutputMode::gaussian, 99);
  CHECK(a.F == b.F);
  for (int u = 0; u < a.num_sensors(); ++u) {
    CHECK(a.sensors[u].H == b.sensors[u].H);
    CHECK(a.sensors[u].R_v == b.sensors[u].R_v);
  }
}

TEST_CASE("canonical sensors are exchangeable under state permutation") {
  // Swapping two states of the system and swapping the two matching sensors
  // must not change any singleton objective.
  const LinearSystem sys =
      random_system(5, 5, 0.7, 1e-2, {0.5, 0.5}, OutputMode::canonical, 3);

  LinearSystem permuted = sys;  // swap states 1 and 3
  const auto swap_idx = [](int i) { return i == 1 ? 3 : (i == 3 ? 1 : i); };
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) permuted.F(i, j) = sys.F(swap_idx(i), swap_idx(j));

  SelectionConfig cfg;
  cfg.N = 3;
  cfg.theta = weights_average(3);
  cfg.s = 1;

  const double direct = objective(sys, cfg, SensorSet::of({1})).value;
  const double swapped = objective(permuted, cfg, SensorSet::of({3})).value;
  CHECK(direct == doctest::Approx(swapped).epsilon(1e-12));
}

TEST_CASE("synth_river_tree shapes") {
  const RiverTree tiny = synth_river_tree(1, 1, 0);
  CHECK(tiny.num_nodes() == 1);
  CHECK(tiny.edges.empty());

  const RiverTree t = synth_river_tree(3, 2, 5);
  int sensor_count = 0, midpoint_count = 0;
  for (const auto& node : t.nodes) (node.sensor_site ? sensor_count : midpoint_count)++;
  CHECK(sensor_count == 7);
  CHECK(midpoint_count == 6);
  CHECK(static_cast<int>(t.edges.size()) == 12);
  CHECK(t.connected());
}

TEST_CASE("river tree geometry: unit parent steps through exact midpoints") {
  const RiverTree t = synth_river_tree(5, 2, 41);
  // Edges come in child -> midpoint -> parent pairs.
  std::vector<int> downstream(t.num_nodes(), -1);
  for (const auto& e : t.edges) downstream[e.from] = e.to;
  for (int node = 0; node < t.num_nodes(); ++node) {
    if (!t.nodes[node].sensor_site || node == t.root) continue;
    const int mid = downstream[node];
    REQUIRE(mid >= 0);
    const int parent = downstream[mid];
    REQUIRE(parent >= 0);
    const double dx = t.nodes[node].x - t.nodes[parent].x;
    const double dy = t.nodes[node].y - t.nodes[parent].y;
    CHECK(dx * dx + dy * dy == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t.nodes[mid].x == doctest::Approx(0.5 * (t.nodes[node].x + t.nodes[parent].x)));
    CHECK(t.nodes[mid].y == doctest::Approx(0.5 * (t.nodes[node].y + t.nodes[parent].y)));
  }
}

TEST_CASE("every non-root node has exactly one outgoing edge") {
  const RiverTree t = synth_river_tree(4, 2, 11);
  std::vector<int> out_degree(t.num_nodes(), 0);
  for (const auto& e : t.edges) out_degree[e.from]++;
  for (int i = 0; i < t.num_nodes(); ++i) {
    CHECK(out_degree[i] == (i == t.root ? 0 : 1));
  }
}

TEST_CASE("basin_system on a single node") {
  const RiverTree t = synth_river_tree(1, 1, 0);
  const BasinSystem basin = basin_system(t, 10.0, 0.1, 0.9, 0.099, 1e-4, 1e-1);
  CHECK(basin.system.n == 1);
  CHECK(basin.system.F(0, 0) == doctest::Approx(0.999).epsilon(1e-12));
}

TEST_CASE("basin_system adjacency matches the kernel formula on a 3-node path") {
  RiverTree t;
  t.nodes = {RiverNode{0.0, 0.0, true, 0}, RiverNode{0.0, 1.0, true, 1},
             RiverNode{0.0, 2.0, true, 2}};
  t.edges = {RiverEdge{2, 1}, RiverEdge{1, 0}};
  t.root = 0;

  const double sigma_sq = 10.0;
  const BasinSystem basin = basin_system(t, sigma_sq, 0.1, 0.9, 0.099, 1e-4, 1e-1);

  // Rebuild F by hand from the kernel weights on the two unit-length edges.
  const double w = std::exp(-1.0 / sigma_sq);
  Matrix a(3, 3);
  a(2, 1) = w;
  a(1, 0) = w;
  Matrix degree(3, 3);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) degree(j, j) += a(i, j);
  const Matrix laplacian = degree - a;
  const Matrix both = a + a.transpose();
  Matrix degree2(3, 3);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) degree2(j, j) += both(i, j);
  const Matrix sym_laplacian = degree2 - both;
  const Matrix expected =
      0.9 * matrix_exp(-0.1 * laplacian) + 0.099 * matrix_exp(-0.1 * sym_laplacian);
  CHECK((basin.system.F - expected).max_abs() < 1e-14);
}

TEST_CASE("basin dynamics stay marginally stable on a 127-node tree") {
  // 64 sensor generations on a single channel: 64 + 63 midpoints = 127 nodes.
  const RiverTree path = synth_river_tree(64, 1, 17);
  CHECK(path.num_nodes() == 127);
  const BasinSystem basin = basin_system(path, 10.0, 0.1, 0.9, 0.099, 1e-4, 1e-1);
  CHECK(spectral_norm(basin.system.F) < 1.02);

  const RiverTree branching = synth_river_tree(5, 2, 17);
  const BasinSystem wide = basin_system(branching, 10.0, 0.1, 0.9, 0.099, 1e-4, 1e-1);
  CHECK(spectral_norm(wide.system.F) < 1.02);
}

TEST_CASE("basin dynamics are entrywise nonnegative") {
  const RiverTree t = synth_river_tree(4, 2, 23);
  const BasinSystem basin = basin_system(t, 10.0, 0.1, 0.9, 0.099, 1e-4, 1e-1);
  CHECK(basin.system.F.min_entry() >= -1e-12);
}

TEST_CASE("basin_system rejects a disconnected tree") {
  RiverTree t;
  t.nodes = {RiverNode{0.0, 0.0, true, 0}, RiverNode{5.0, 5.0, true, 1}};
  t.root = 0;  // no edges: node 1 unreachable
  CHECK_THROWS_AS(basin_system(t, 10.0, 0.1, 0.9, 0.099, 1e-4, 1e-1), ConfigError);
}

TEST_CASE("river tree levels and head node") {
  const RiverTree t = synth_river_tree(3, 2, 29);
  const auto levels = t.sensor_levels();
  REQUIRE(levels.size() == 3);
  CHECK(levels[0].size() == 1);
  CHECK(levels[1].size() == 2);
  CHECK(levels[2].size() == 4);
  CHECK(t.nodes[t.head_node()].level == 2);
  CHECK(t.nodes[t.head_node()].sensor_site);
}

TEST_CASE("basin strata cycle the levels deepest-first without overuse") {
  const RiverTree tree = synth_river_tree(5, 2, 3);
  const BasinSystem basin = basin_system(tree, 10.0, 0.1, 0.9, 0.099, 1e-4, 1e-1);
  const auto strata = basin_strata(tree, basin.sensor_nodes, 10);
  REQUIRE(strata.size() == 10);

  // Level sizes are 16, 8, 4, 2, 1 deepest-first: two full cycles fit.
  const auto level_of = [&](const std::vector<int>& stratum) {
    return tree.nodes[basin.sensor_nodes[stratum.front()]].level;
  };
  CHECK(level_of(strata[0]) == 4);
  CHECK(level_of(strata[4]) == 0);
  CHECK(level_of(strata[5]) == 4);

  // Each level appears no more often than it has sensors, so a stratified
  // draw always succeeds.
  SelectionConfig cfg;
  cfg.N = 1;
  cfg.theta = {1.0};
  cfg.s = 10;
  const SelectionResult draw = random_baseline(basin.system, cfg, 5, strata);
  CHECK(draw.chosen.size() == 10);

  CHECK_THROWS_AS(basin_strata(tree, basin.sensor_nodes, 99), ConfigError);
}

TEST_CASE("system JSON round-trip is lossless") {
  const LinearSystem sys =
      random_system(4, 3, 0.8, 1e-2, {0.3, 1.7}, OutputMode::gaussian, 55);
  const nlohmann::json doc = system_to_json(sys);
  CHECK(doc.at("schema") == "1");
  const LinearSystem back = system_from_json(doc);
  CHECK(back.n == sys.n);
  CHECK(back.F == sys.F);
  CHECK(back.R_w == sys.R_w);
  CHECK(back.Pi0 == sys.Pi0);
  REQUIRE(back.num_sensors() == sys.num_sensors());
  for (int u = 0; u < sys.num_sensors(); ++u) {
    CHECK(back.sensors[u].H == sys.sensors[u].H);
    CHECK(back.sensors[u].R_v == sys.sensors[u].R_v);
  }
  // A second dump must be byte-identical.
  CHECK(system_to_json(back).dump() == doc.dump());
}

TEST_CASE("system_from_json reports the offending field") {
  nlohmann::json doc = system_to_json(
      random_system(2, 2, 0.5, 1e-2, {1.0, 1.0}, OutputMode::canonical, 1));
  doc.erase("R_w");
  try {
    system_from_json(doc);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("R_w") != std::string::npos);
  }
}

TEST_CASE("validate rejects indefinite noise covariances") {
  LinearSystem sys = random_system(3, 2, 0.5, 1e-2, {1.0, 1.0}, OutputMode::canonical, 2);
  sys.R_w(0, 0) = -1.0;
  CHECK_THROWS_AS(sys.validate(), ConfigError);
}
