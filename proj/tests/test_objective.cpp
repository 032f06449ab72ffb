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

#include "sensel/certificates.hpp"
#include "sensel/objective.hpp"
#include "test_support.hpp"

using namespace sensel;
using namespace sensel::testing;

namespace {

LinearSystem scalar_system() {
  LinearSystem sys;
  sys.n = 1;
  sys.F = Matrix::from_rows({{0.5}});
  sys.R_w = Matrix::identity(1);
  sys.Pi0 = Matrix::identity(1);
  Sensor s;
  s.H = Matrix::identity(1);
  s.R_v = Matrix::identity(1);
  sys.sensors.push_back(s);
  return sys;
}

SelectionConfig basic_config(Scalarization h, EstimationKind kind, int n_steps) {
  SelectionConfig cfg;
  cfg.scalarization = h;
  cfg.kind = kind;
  cfg.N = n_steps;
  cfg.theta = weights_average(n_steps);
  cfg.s = 1;
  return cfg;
}

}  // namespace

TEST_CASE("scalarize on a diagonal matrix") {
  const Matrix y = Matrix::diagonal(std::vector<double>{1.0, 2.0, 3.0});
  CHECK(scalarize(Scalarization::trace, y) == doctest::Approx(6.0));
  CHECK(scalarize(Scalarization::specnorm, y) == doctest::Approx(3.0));
  CHECK(scalarize(Scalarization::logdet, y) == doctest::Approx(std::log(6.0)));
}

TEST_CASE("scalarize on the identity") {
  const Matrix y = Matrix::identity(5);
  CHECK(scalarize(Scalarization::trace, y) == doctest::Approx(5.0));
  CHECK(scalarize(Scalarization::specnorm, y) == doctest::Approx(1.0));
  CHECK(scalarize(Scalarization::logdet, y) == doctest::Approx(0.0));
}

TEST_CASE("logdet matches the eigenvalue-product oracle") {
  Rng rng(3);
  const Matrix y = random_spd(rng, 6);
  double product = 1.0;
  for (double lambda : sym_eig(y).eigenvalues) product *= lambda;
  CHECK(scalarize(Scalarization::logdet, y) ==
        doctest::Approx(std::log(product)).epsilon(1e-10));
}

TEST_CASE("logdet rejects indefinite matrices") {
  Matrix y = Matrix::identity(2);
  y(1, 1) = -0.5;
  CHECK_THROWS_AS(scalarize(Scalarization::logdet, y), PreconditionError);
}

TEST_CASE("objective vanishes exactly at the empty set") {
  Rng rng(7);
  for (EstimationKind kind : {EstimationKind::filtering, EstimationKind::smoothing}) {
    for (Scalarization h :
         {Scalarization::trace, Scalarization::specnorm, Scalarization::logdet}) {
      const LinearSystem sys =
          random_system(4, 5, 0.8, 1e-2, {0.1, 1.0}, OutputMode::gaussian, 7);
      const ObjectiveValue v = objective(sys, basic_config(h, kind, 3), SensorSet{});
      CHECK(v.value == 0.0);  // exact, by the shared code path
    }
  }
}

TEST_CASE("scalar filtering instance has value -0.5 with its sensor") {
  const ObjectiveValue v = objective(
      scalar_system(), basic_config(Scalarization::trace, EstimationKind::filtering, 1),
      SensorSet::of({0}));
  CHECK(v.value == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(v.c_empty == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("objective matches the composition oracle at N = 1") {
  Rng rng(11);
  const LinearSystem sys =
      random_system(4, 5, 0.9, 1e-2, {0.3, 1.0}, OutputMode::gaussian, 11);
  const SelectionConfig cfg = basic_config(Scalarization::trace, EstimationKind::filtering, 1);
  const HorizonModel horizon = filtering_horizon(sys, SensorSet{}, 0, 1);

  for (std::uint32_t mask = 0; mask < (1u << 5); ++mask) {
    const SensorSet x = SensorSet::from_bitmask(mask);
    const double direct = scalarize(Scalarization::trace, evaluate_Y(horizon.steps[0], x)) -
                          scalarize(Scalarization::trace, evaluate_Y(horizon.steps[0], SensorSet{}));
    CHECK(objective(sys, cfg, x).value == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("multi-step filtering applies the candidate schedule to the recursion") {
  // Hand recursion for the scalar system over N = 2, average weights.
  const LinearSystem sys = scalar_system();
  SelectionConfig cfg = basic_config(Scalarization::trace, EstimationKind::filtering, 2);

  // With the sensor: P_0 = 0.5, prior_1 = 1.125, P_1 = (1/1.125 + 1)^-1.
  const double p0 = 0.5;
  const double p1 = 1.0 / (1.0 / 1.125 + 1.0);
  // Empty set: P_0 = 1, prior_1 = 1.25, P_1 = 1.25.
  const double expected = (p0 + p1) - (1.0 + 1.25);
  CHECK(objective(sys, cfg, SensorSet::of({0})).value ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("objective is monotone non-increasing along random chains") {
  Rng rng(13);
  for (EstimationKind kind : {EstimationKind::filtering, EstimationKind::smoothing}) {
    for (Scalarization h :
         {Scalarization::trace, Scalarization::specnorm, Scalarization::logdet}) {
      const LinearSystem sys =
          random_system(3, 6, 0.8, 1e-2, {0.2, 1.0}, OutputMode::gaussian,
                        1000 + static_cast<int>(h));
      const ObjectiveEvaluator eval(sys, basic_config(h, kind, 2));
      std::vector<int> chain;
      double previous = eval.value(SensorSet{});
      CHECK(previous == 0.0);
      for (int u = 0; u < 6; ++u) {
        chain.push_back(u);
        const double current = eval.value(SensorSet::of(chain));
        CHECK(current <= previous + 1e-9);
        CHECK(current <= 1e-12);  // nonpositivity
        previous = current;
      }
    }
  }
}

TEST_CASE("modular reference objective is exactly modular") {
  Rng rng(17);
  const LinearSystem sys =
      random_system(4, 6, 0.7, 1e-2, {0.5, 1.5}, OutputMode::gaussian, 17);
  SelectionConfig cfg = basic_config(Scalarization::trace, EstimationKind::filtering, 2);

  CHECK(modular_reference_objective(sys, cfg, SensorSet{}) == 0.0);

  // Exact additivity over disjoint subsets.
  const double ab = modular_reference_objective(sys, cfg, SensorSet::of({0, 1, 4}));
  const double a = modular_reference_objective(sys, cfg, SensorSet::of({0, 4}));
  const double b = modular_reference_objective(sys, cfg, SensorSet::of({1}));
  CHECK(ab == a + b);

  // Singleton sum equals the full-set value.
  double singleton_sum = 0.0;
  for (int u = 0; u < 6; ++u) {
    singleton_sum += modular_reference_objective(sys, cfg, SensorSet::of({u}));
  }
  const double full = modular_reference_objective(sys, cfg, SensorSet::full(6));
  CHECK(full == doctest::Approx(singleton_sum).epsilon(1e-10));
}

TEST_CASE("modular reference tracks the information-sum trace formula") {
  Rng rng(19);
  const LinearSystem sys =
      random_system(3, 4, 0.6, 1e-2, {0.5, 1.0}, OutputMode::gaussian, 19);
  SelectionConfig cfg = basic_config(Scalarization::trace, EstimationKind::smoothing, 2);
  const HorizonModel horizon = smoothing_horizon(sys, 0, 2);
  const SensorSet x = SensorSet::of({1, 3});
  double expected = 0.0;
  for (int k = 0; k < 2; ++k) {
    for (int u : x.members()) expected -= horizon.steps[k].m_sensors[u].trace();
  }
  CHECK(modular_reference_objective(sys, cfg, x) ==
        doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("logdet objective is supermodular on small instances") {
  Rng rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    InformationModel model = random_information_model(rng, 3, 6);
    HorizonModel horizon;
    horizon.N = 1;
    horizon.steps.push_back(model);
    const HorizonObjective f(horizon, {1.0}, Scalarization::logdet);
    const EpsilonExhaustive eps =
        epsilon_exhaustive([&](const SensorSet& x) { return f.value(x); }, 6);
    CHECK(eps.value <= 1e-9);
  }
}

TEST_CASE("scalar-matrix trace instances are supermodular") {
  Rng rng(29);
  for (int trial = 0; trial < 5; ++trial) {
    InformationModel model;
    const int n = 3;
    model.m_empty = Matrix::scaled_identity(n, 0.5 + rng.uniform());
    for (int u = 0; u < 6; ++u) {
      model.m_sensors.push_back(Matrix::scaled_identity(n, rng.uniform()));
    }
    HorizonModel horizon;
    horizon.N = 1;
    horizon.steps.push_back(model);
    const HorizonObjective f(horizon, {1.0}, Scalarization::trace);
    const double alpha = alpha_exhaustive([&](const SensorSet& x) { return f.value(x); }, 6);
    CHECK(alpha >= 1.0 - 1e-9);
  }
}

TEST_CASE("weight presets") {
  CHECK(weights_final(4) == std::vector<double>{0.0, 0.0, 0.0, 1.0});
  CHECK(weights_average(3) == std::vector<double>{1.0, 1.0, 1.0});
  const std::vector<double> geo = weights_geometric(3, 0.5);
  CHECK(geo[0] == doctest::Approx(0.25));
  CHECK(geo[1] == doctest::Approx(0.5));
  CHECK(geo[2] == doctest::Approx(1.0));
}

TEST_CASE("config validation") {
  SelectionConfig cfg;
  cfg.N = 2;
  cfg.theta = {0.0, 0.0};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.theta = {1.0, -0.1};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.theta = {1.0, 1.0};
  cfg.s = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.s = 2;
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("smoothing objective respects the dimension cap") {
  const LinearSystem sys =
      random_system(10, 3, 0.5, 1e-2, {1.0, 1.0}, OutputMode::canonical, 31);
  SelectionConfig cfg = basic_config(Scalarization::trace, EstimationKind::smoothing, 250);
  CHECK_THROWS_AS(objective(sys, cfg, SensorSet{}), SizeError);
}
