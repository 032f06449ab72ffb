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

// Command line harness: system generation, greedy selection with
// near-optimality certificates, parameter sweeps, brute-force suboptimality
// studies, and the river-basin monitoring demonstration. All artifacts are
// JSON or RFC-4180 CSV for downstream plotting.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "sensel/certificates.hpp"
#include "sensel/selection.hpp"
#include "sensel/simulation.hpp"
#include "sensel/system_io.hpp"

namespace {

using namespace sensel;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitConfig = 3;
constexpr int kExitNumerical = 4;

struct CommonFlags {
  std::uint64_t seed = 1;
  std::string out = ".";
  std::string scalarization = "trace";
  std::string kind = "filtering";
  int horizon = 1;
  int start = 0;
  std::string weights = "average";
  int budget = 1;
  int steps = 0;  // 0: r = s
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--seed", flags.seed, "RNG seed");
  cmd->add_option("--out", flags.out, "output directory");
  cmd->add_option("--scalarization", flags.scalarization, "trace|specnorm|logdet")
      ->check(CLI::IsMember({"trace", "specnorm", "logdet"}));
  cmd->add_option("--kind", flags.kind, "filtering|smoothing")
      ->check(CLI::IsMember({"filtering", "smoothing"}));
  cmd->add_option("--horizon", flags.horizon, "horizon length N");
  cmd->add_option("--start", flags.start, "start step m");
  cmd->add_option("--weights", flags.weights, "final|average|geometric:<rho>");
  cmd->add_option("--budget", flags.budget, "budget s");
  cmd->add_option("--steps", flags.steps, "greedy steps r (default: s)");
}

Scalarization parse_scalarization(const std::string& name) {
  if (name == "trace") return Scalarization::trace;
  if (name == "specnorm") return Scalarization::specnorm;
  if (name == "logdet") return Scalarization::logdet;
  throw ConfigError("unknown scalarization '" + name + "'");
}

EstimationKind parse_kind(const std::string& name) {
  if (name == "filtering") return EstimationKind::filtering;
  if (name == "smoothing") return EstimationKind::smoothing;
  throw ConfigError("unknown estimation kind '" + name + "'");
}

std::vector<double> parse_weights(const std::string& name, int n_steps) {
  if (name == "final") return weights_final(n_steps);
  if (name == "average") return weights_average(n_steps);
  if (name.rfind("geometric:", 0) == 0) {
    const double rho = std::stod(name.substr(10));
    return weights_geometric(n_steps, rho);
  }
  throw ConfigError("unknown weight preset '" + name + "'");
}

SelectionConfig config_from_flags(const CommonFlags& flags) {
  SelectionConfig cfg;
  cfg.scalarization = parse_scalarization(flags.scalarization);
  cfg.kind = parse_kind(flags.kind);
  cfg.m = flags.start;
  cfg.N = flags.horizon;
  cfg.theta = parse_weights(flags.weights, flags.horizon);
  cfg.s = flags.budget;
  cfg.r = flags.steps;
  cfg.validate();
  return cfg;
}

fs::path prepare_out_dir(const std::string& out) {
  fs::path dir(out);
  fs::create_directories(dir);
  return dir;
}

std::vector<double> parse_grid(const std::string& csv) {
  std::vector<double> values;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) values.push_back(std::stod(item));
  }
  if (values.empty()) throw ConfigError("grid '" + csv + "' is empty");
  return values;
}

/// Runs `count` tasks on a small worker pool and stores each result by task
/// index, so output order never depends on scheduling. The first exception a
/// worker hits is rethrown on the calling thread after the pool drains.
template <typename Result, typename Task>
std::vector<Result> run_indexed(int count, const Task& task) {
  std::vector<Result> results(count);
  const int workers = std::max(1, std::min<int>(std::thread::hardware_concurrency(), count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) results[i] = task(i);
    return results;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      while (!failed.load()) {
        const int i = next.fetch_add(1);
        if (i >= count) break;
        try {
          results[i] = task(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          failed.store(true);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return results;
}

// ---------------------------------------------------------------------------
// gen

struct GenFlags {
  CommonFlags common;
  int n = 30;
  int p = 30;
  double target_norm = 0.9;
  double sigma_w2 = 1e-2;
  double sigma_v2_min = 1.0;
  double sigma_v2_max = 1.0;
  double pi0 = 1e-2;
  std::string mode = "canonical";
};

int run_gen(const GenFlags& flags) {
  const OutputMode mode =
      flags.mode == "canonical" ? OutputMode::canonical : OutputMode::gaussian;
  const LinearSystem sys =
      random_system(flags.n, flags.p, flags.target_norm, flags.sigma_w2,
                    {flags.sigma_v2_min, flags.sigma_v2_max}, mode, flags.common.seed,
                    flags.pi0);
  const fs::path dir = prepare_out_dir(flags.common.out);
  save_system(sys, (dir / "system.json").string());
  std::cout << "wrote " << (dir / "system.json").string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// select / certify

CertificateReport certificates_for(const LinearSystem& sys, const SelectionConfig& cfg) {
  return cfg.kind == EstimationKind::filtering ? filtering_certificates(sys, cfg)
                                               : smoothing_certificates(sys, cfg);
}

int run_select(const std::string& system_path, const CommonFlags& flags, bool select) {
  const LinearSystem sys = load_system(system_path);
  SelectionConfig cfg = config_from_flags(flags);
  if (cfg.s > sys.num_sensors()) {
    throw ConfigError("budget s exceeds the number of sensors");
  }

  nlohmann::json doc;
  doc["schema"] = kSchemaVersion;
  doc["system"] = system_path;
  doc["scalarization"] = to_string(cfg.scalarization);
  doc["kind"] = to_string(cfg.kind);

  const CertificateReport report = certificates_for(sys, cfg);
  doc["certificates"] = certificate_to_json(report);

  const fs::path dir = prepare_out_dir(flags.out);
  fs::path path;
  if (select) {
    const SelectionResult result = greedy_select(sys, cfg);
    doc["selection"] = selection_to_json(result);
    const Guarantee g =
        guarantees(report.alpha_bound, report.epsilon_bound,
                   result.objective_trajectory.back(), cfg.steps(), cfg.s);
    doc["guarantees"] = {{"multiplicative_factor", g.multiplicative_factor},
                         {"additive_value", g.additive_value}};
    path = dir / "result.json";
  } else {
    path = dir / "certificates.json";
  }
  write_text_file(path.string(), doc.dump(2) + "\n");
  std::cout << "wrote " << path.string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepFlags {
  CommonFlags common;
  int n = 30;
  int p = 30;
  int trials = 20;
  double sigma_w2 = 1e-2;
  std::string ratio_grid = "1e-2,1,1e2,1e4";  // sigma_v^2 / sigma_w^2
  std::string f_norm_grid = "0.1,0.5,0.9";
};

int run_sweep(SweepFlags flags) {
  if (flags.common.horizon == 1) flags.common.horizon = 10;  // study default
  const EstimationKind kind = parse_kind(flags.common.kind);
  // The noise-ratio grid is realized by scaling the measurement noise at
  // fixed sigma_w^2 = Pi0, keeping the prediction covariance well conditioned
  // across the whole grid. Filtering averages the horizon error; smoothing
  // scores the final step, which reduces to the single step m = N-1 (the
  // same bound at a fraction of the lifted-matrix work).
  const std::vector<double> ratio_grid = parse_grid(flags.ratio_grid);
  const std::vector<double> f_norm_grid = parse_grid(flags.f_norm_grid);

  struct Row {
    double sigma_v2 = 0.0;
    double f_norm = 0.0;
    int trial = 0;
    double alpha = 0.0;
    double epsilon = 0.0;
    double runtime_ms = 0.0;
  };

  std::vector<Row> tasks;
  for (double ratio : ratio_grid)
    for (double fn : f_norm_grid)
      for (int t = 0; t < flags.trials; ++t)
        tasks.push_back(Row{ratio * flags.sigma_w2, fn, t, 0, 0, 0});

  const auto worker = [&](int index) {
    Row row = tasks[index];
    const auto start = std::chrono::steady_clock::now();
    const LinearSystem sys = random_system(
        flags.n, flags.p, row.f_norm, flags.sigma_w2, {row.sigma_v2, row.sigma_v2},
        OutputMode::canonical, flags.common.seed + static_cast<std::uint64_t>(row.trial),
        flags.sigma_w2);
    SelectionConfig cfg;
    cfg.kind = kind;
    cfg.s = flags.common.budget;
    if (kind == EstimationKind::filtering) {
      cfg.N = flags.common.horizon;
      cfg.theta = weights_average(cfg.N);
      cfg.m = flags.common.start;
    } else {
      cfg.m = flags.common.start + flags.common.horizon - 1;
      cfg.N = 1;
      cfg.theta = {1.0};
    }
    const CertificateReport report = certificates_for(sys, cfg);
    row.alpha = report.alpha_bound;
    row.epsilon = report.epsilon_bound;
    row.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return row;
  };

  const std::vector<Row> rows = run_indexed<Row>(static_cast<int>(tasks.size()), worker);

  CsvWriter csv({"kind", "scalarization", "sigma_w2", "sigma_v2", "F_norm", "trial",
                 "alpha_bound", "epsilon_bound", "runtime_ms"});
  for (const Row& row : rows) {
    csv.add_row({flags.common.kind, flags.common.scalarization,
                 CsvWriter::format(flags.sigma_w2), CsvWriter::format(row.sigma_v2),
                 CsvWriter::format(row.f_norm),
                 CsvWriter::format(static_cast<long long>(row.trial)),
                 CsvWriter::format(row.alpha), CsvWriter::format(row.epsilon),
                 CsvWriter::format(row.runtime_ms)});
  }
  const fs::path dir = prepare_out_dir(flags.common.out);
  csv.save((dir / "sweep.csv").string());
  std::cout << "wrote " << (dir / "sweep.csv").string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bruteforce

struct BruteforceFlags {
  CommonFlags common;
  int n = 10;
  int p = 10;
  int trials = 200;
  double sigma_w2 = 1e-2;
  double sigma_v2_min = 1e-2;
  double sigma_v2_max = 1.0;
  double f_norm = 0.9;
};

int run_bruteforce(BruteforceFlags flags) {
  if (flags.common.horizon == 1) flags.common.horizon = 10;
  if (flags.common.budget == 1) flags.common.budget = 4;
  const EstimationKind kind = parse_kind(flags.common.kind);
  const Scalarization h = parse_scalarization(flags.common.scalarization);

  if (binomial_coefficient(flags.p, flags.common.budget) > 200000) {
    throw SizeError("bruteforce study exceeds the exhaustive cap");
  }

  struct Row {
    double nu_star = 0.0;
    double f_greedy = 0.0;
    double f_opt = 0.0;
    double exhaustive_constant = 0.0;
    double bound_value = 0.0;
  };

  const auto worker = [&](int trial) {
    const LinearSystem sys = random_system(
        flags.n, flags.p, flags.f_norm, flags.sigma_w2,
        {flags.sigma_v2_min, flags.sigma_v2_max}, OutputMode::gaussian,
        flags.common.seed + static_cast<std::uint64_t>(trial));
    SelectionConfig cfg;
    cfg.scalarization = h;
    cfg.kind = kind;
    cfg.N = flags.common.horizon;
    cfg.theta = kind == EstimationKind::filtering ? weights_average(cfg.N)
                                                  : weights_final(cfg.N);
    cfg.s = flags.common.budget;

    const ObjectiveEvaluator eval(sys, cfg);
    Row row;
    row.f_greedy = greedy_select(eval, cfg.steps()).objective_trajectory.back();
    const auto [opt_set, f_opt] = exhaustive_select(eval, cfg.s, cfg.exhaustive_cap);
    row.f_opt = f_opt;
    row.nu_star = relative_suboptimality(row.f_greedy, row.f_opt);

    const CertificateReport report = certificates_for(sys, cfg);
    const SetFunction f = [&eval](const SensorSet& x) { return eval.value(x); };
    if (h == Scalarization::specnorm) {
      row.exhaustive_constant = epsilon_exhaustive(f, flags.p).value;
      row.bound_value = report.epsilon_bound;
    } else {
      row.exhaustive_constant = alpha_exhaustive(f, flags.p);
      row.bound_value = report.alpha_bound;
    }
    return row;
  };

  const std::vector<Row> rows = run_indexed<Row>(flags.trials, worker);

  CsvWriter csv({"trial", "nu_star", "f_greedy", "f_opt", "alpha_or_epsilon_exhaustive",
                 "bound_value"});
  int optimal_hits = 0;
  for (int t = 0; t < flags.trials; ++t) {
    const Row& row = rows[t];
    if (row.nu_star <= 1e-9) ++optimal_hits;
    csv.add_row({CsvWriter::format(static_cast<long long>(t)), CsvWriter::format(row.nu_star),
                 CsvWriter::format(row.f_greedy), CsvWriter::format(row.f_opt),
                 CsvWriter::format(row.exhaustive_constant),
                 CsvWriter::format(row.bound_value)});
  }
  const double hit_rate = static_cast<double>(optimal_hits) / flags.trials;
  csv.add_row({"summary", CsvWriter::format(hit_rate), "", "", "", ""});

  const fs::path dir = prepare_out_dir(flags.common.out);
  csv.save((dir / "bruteforce.csv").string());
  std::cout << "optimal-hit fraction: " << hit_rate << "\n";
  std::cout << "wrote " << (dir / "bruteforce.csv").string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// basin

struct BasinFlags {
  CommonFlags common;
  int levels = 5;
  int branching = 2;
  int sim_steps = 200;
  double sigma_sq = 10.0;
  double dt = 0.1;
  double advect = 0.9;
  double diffuse = 0.099;
  double sigma_w2 = 1e-4;
  double sigma_v2 = 1e-1;
};

int run_basin(BasinFlags flags) {
  if (flags.common.horizon == 1) flags.common.horizon = 50;
  if (flags.common.budget == 1) flags.common.budget = 10;

  const RiverTree tree = synth_river_tree(flags.levels, flags.branching, flags.common.seed);
  const BasinSystem basin = basin_system(tree, flags.sigma_sq, flags.dt, flags.advect,
                                         flags.diffuse, flags.sigma_w2, flags.sigma_v2);
  const int p = basin.system.num_sensors();
  if (flags.common.budget > p) throw ConfigError("budget exceeds the sensor pool");

  SelectionConfig cfg;
  cfg.scalarization = Scalarization::trace;
  cfg.kind = EstimationKind::filtering;
  cfg.N = flags.common.horizon;
  cfg.theta = weights_average(cfg.N);
  cfg.s = flags.common.budget;

  const SelectionResult greedy = greedy_select(basin.system, cfg);
  const SelectionResult random = random_baseline(
      basin.system, cfg, flags.common.seed + 1,
      basin_strata(tree, basin.sensor_nodes, flags.common.budget));
  const SensorSet full = SensorSet::full(p);

  // Spike release at the most upstream site; probes along its path downhill.
  std::vector<double> x0(basin.system.n, 0.0);
  const int head = tree.head_node();
  x0[head] = 10.0;

  std::vector<int> downstream(basin.system.n, -1);
  for (const RiverEdge& e : tree.edges) downstream[e.from] = e.to;
  std::vector<int> path;
  for (int node = head; node >= 0; node = downstream[node]) {
    if (tree.nodes[node].sensor_site) path.push_back(node);
  }
  std::vector<int> probes;
  const int max_probes = 7;
  const int stride = std::max<std::size_t>(1, path.size() / max_probes);
  for (std::size_t i = 0; i < path.size(); i += stride) probes.push_back(path[i]);

  const std::uint64_t noise_seed = flags.common.seed + 1000;
  const SimulationResult sim_greedy = simulate_filter(
      basin.system, SensorSet::of(greedy.chosen), x0, flags.sim_steps, noise_seed, probes);
  const SimulationResult sim_random = simulate_filter(
      basin.system, SensorSet::of(random.chosen), x0, flags.sim_steps, noise_seed, probes);
  const SimulationResult sim_full =
      simulate_filter(basin.system, full, x0, flags.sim_steps, noise_seed, probes);

  nlohmann::json doc;
  doc["schema"] = kSchemaVersion;
  doc["nodes"] = basin.system.n;
  doc["sensor_pool"] = p;
  doc["budget"] = flags.common.budget;
  doc["spike_node"] = head;
  doc["greedy_sensors"] = greedy.chosen;
  nlohmann::json greedy_nodes = nlohmann::json::array();
  for (int u : greedy.chosen) greedy_nodes.push_back(basin.sensor_nodes[u]);
  doc["greedy_sensor_nodes"] = std::move(greedy_nodes);
  doc["random_sensors"] = random.chosen;
  doc["mse"] = {{"greedy", sim_greedy.mean_squared_error},
                {"random", sim_random.mean_squared_error},
                {"full", sim_full.mean_squared_error}};
  doc["selection_objective"] = greedy.objective_trajectory.back();

  const fs::path dir = prepare_out_dir(flags.common.out);
  write_text_file((dir / "basin.json").string(), doc.dump(2) + "\n");

  CsvWriter csv({"probe_node", "step", "truth", "greedy_estimate", "random_estimate",
                 "full_estimate"});
  for (std::size_t pi = 0; pi < probes.size(); ++pi) {
    for (int k = 0; k < flags.sim_steps; ++k) {
      csv.add_row({CsvWriter::format(static_cast<long long>(probes[pi])),
                   CsvWriter::format(static_cast<long long>(k)),
                   CsvWriter::format(sim_greedy.probe_truth[pi][k]),
                   CsvWriter::format(sim_greedy.probe_estimate[pi][k]),
                   CsvWriter::format(sim_random.probe_estimate[pi][k]),
                   CsvWriter::format(sim_full.probe_estimate[pi][k])});
    }
  }
  csv.save((dir / "basin_trajectories.csv").string());

  std::cout << "greedy MSE " << sim_greedy.mean_squared_error << ", random MSE "
            << sim_random.mean_squared_error << ", full MSE "
            << sim_full.mean_squared_error << "\n";
  std::cout << "wrote " << (dir / "basin.json").string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greedy sensor selection for Kalman filtering and smoothing"};
  app.require_subcommand(1);

  GenFlags gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a random system to JSON");
  add_common_flags(gen_cmd, gen.common);
  gen_cmd->add_option("--n", gen.n, "state dimension");
  gen_cmd->add_option("--p", gen.p, "number of sensors");
  gen_cmd->add_option("--target-norm", gen.target_norm, "spectral norm of F");
  gen_cmd->add_option("--sigma-w2", gen.sigma_w2, "process noise variance");
  gen_cmd->add_option("--sigma-v2-min", gen.sigma_v2_min, "noise variance range low");
  gen_cmd->add_option("--sigma-v2-max", gen.sigma_v2_max, "noise variance range high");
  gen_cmd->add_option("--pi0", gen.pi0, "initial covariance scale");
  gen_cmd->add_option("--mode", gen.mode, "canonical|gaussian")
      ->check(CLI::IsMember({"canonical", "gaussian"}));

  CommonFlags select_flags;
  std::string select_system;
  CLI::App* select_cmd =
      app.add_subcommand("select", "greedy selection plus certificates for a system");
  add_common_flags(select_cmd, select_flags);
  select_cmd->add_option("--system", select_system, "system JSON path")->required();

  CommonFlags certify_flags;
  std::string certify_system;
  CLI::App* certify_cmd =
      app.add_subcommand("certify", "near-optimality certificates for a system");
  add_common_flags(certify_cmd, certify_flags);
  certify_cmd->add_option("--system", certify_system, "system JSON path")->required();

  SweepFlags sweep;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "certificate bounds over a noise/norm grid");
  add_common_flags(sweep_cmd, sweep.common);
  sweep_cmd->add_option("--n", sweep.n, "state dimension");
  sweep_cmd->add_option("--p", sweep.p, "number of sensors");
  sweep_cmd->add_option("--trials", sweep.trials, "realizations per grid point");
  sweep_cmd->add_option("--sigma-w2", sweep.sigma_w2, "process noise variance (= Pi0 scale)");
  sweep_cmd->add_option("--sigma-ratio-grid", sweep.ratio_grid,
                        "comma separated sigma_v^2/sigma_w^2 grid");
  sweep_cmd->add_option("--f-norm-grid", sweep.f_norm_grid, "comma separated grid");

  BruteforceFlags brute;
  CLI::App* brute_cmd =
      app.add_subcommand("bruteforce", "greedy vs exhaustive suboptimality study");
  add_common_flags(brute_cmd, brute.common);
  brute_cmd->add_option("--n", brute.n, "state dimension");
  brute_cmd->add_option("--p", brute.p, "number of sensors");
  brute_cmd->add_option("--trials", brute.trials, "number of system realizations");
  brute_cmd->add_option("--sigma-w2", brute.sigma_w2, "process noise variance");
  brute_cmd->add_option("--sigma-v2-min", brute.sigma_v2_min, "noise range low");
  brute_cmd->add_option("--sigma-v2-max", brute.sigma_v2_max, "noise range high");
  brute_cmd->add_option("--f-norm", brute.f_norm, "spectral norm of F");

  BasinFlags basin;
  CLI::App* basin_cmd =
      app.add_subcommand("basin", "river-basin monitoring demonstration");
  add_common_flags(basin_cmd, basin.common);
  basin_cmd->add_option("--levels", basin.levels, "tree levels");
  basin_cmd->add_option("--branching", basin.branching, "children per node");
  basin_cmd->add_option("--sim-steps", basin.sim_steps, "simulation length");
  basin_cmd->add_option("--sigma-sq", basin.sigma_sq, "kernel smoothness");
  basin_cmd->add_option("--dt", basin.dt, "sampling period");
  basin_cmd->add_option("--advect", basin.advect, "advection coefficient");
  basin_cmd->add_option("--diffuse", basin.diffuse, "diffusion coefficient");
  basin_cmd->add_option("--sigma-w2", basin.sigma_w2, "process noise variance");
  basin_cmd->add_option("--sigma-v2", basin.sigma_v2, "measurement noise variance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen);
    if (select_cmd->parsed()) return run_select(select_system, select_flags, true);
    if (certify_cmd->parsed()) return run_select(certify_system, certify_flags, false);
    if (sweep_cmd->parsed()) return run_sweep(sweep);
    if (brute_cmd->parsed()) return run_bruteforce(brute);
    if (basin_cmd->parsed()) return run_basin(basin);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const SizeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DegenerateInstanceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
