// Copyright 2022 The swaproute Authors
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

// Command-line front end: problem/map generation, routing, verification,
// density curves, resource estimates and router benchmarks.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "swaproute/bench.hpp"
#include "swaproute/error.hpp"
#include "swaproute/estimator.hpp"
#include "swaproute/io.hpp"
#include "swaproute/oracle.hpp"
#include "swaproute/problem.hpp"
#include "swaproute/report.hpp"
#include "swaproute/router.hpp"
#include "swaproute/strategy.hpp"
#include "swaproute/topology.hpp"

namespace sr = swaproute;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    sr::write_file(path, text);
  }
}

// Angles drawn from the seed unless given explicitly.
struct Angles {
  std::vector<double> gammas;
  std::vector<double> betas;
};

Angles resolve_angles(std::size_t rounds, std::uint64_t seed, std::vector<double> gammas, std::vector<double> betas) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, M_PI);
  if (gammas.empty()) {
    for (std::size_t k = 0; k < rounds; ++k) gammas.push_back(angle(rng));
  }
  if (betas.empty()) {
    for (std::size_t k = 0; k < rounds; ++k) betas.push_back(angle(rng));
  }
  if (gammas.size() != rounds || betas.size() != rounds) {
    throw sr::Error(sr::ErrorCode::LengthMismatch, "need one gamma and one beta per round");
  }
  return {std::move(gammas), std::move(betas)};
}

struct CircuitArgs {
  std::string problem;
  std::string map;
  std::size_t rounds = 1;
  std::uint64_t seed = 0;
  std::vector<double> gammas;
  std::vector<double> betas;
};

void add_circuit_options(CLI::App* cmd, CircuitArgs& a) {
  cmd->add_option("--problem", a.problem, "problem file (JSON or 'i j w' lines)")->required();
  cmd->add_option("--map", a.map, "coupling map file (JSON or 'u v' lines)")->required();
  cmd->add_option("--p", a.rounds, "QAOA rounds")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", a.seed, "seed for default angles");
  cmd->add_option("--gammas", a.gammas, "cost angles, one per round")->delimiter(',');
  cmd->add_option("--betas", a.betas, "mixer angles, one per round")->delimiter(',');
}

sr::AbstractCircuit build_circuit(const sr::ProblemGraph& graph, const CircuitArgs& a) {
  const Angles angles = resolve_angles(a.rounds, a.seed, a.gammas, a.betas);
  return sr::build_qaoa_circuit(graph, angles.gammas, angles.betas);
}

// --- gen-problem -----------------------------------------------------------

struct GenProblemArgs {
  std::size_t n = 10;
  double density = 1.0;
  std::uint64_t seed = 0;
  std::string weights = "pm1";
  std::string format = "json";
  std::string out;
};

int run_gen_problem(const GenProblemArgs& a) {
  const auto mode = a.weights == "unit" ? sr::WeightMode::Unit : sr::WeightMode::PlusMinusOne;
  const sr::ProblemGraph g = sr::random_gnm(a.n, a.density, a.seed, mode);
  emit(a.out, a.format == "text" ? sr::to_text(g) : sr::to_json(g));
  return kExitOk;
}

// --- gen-map ---------------------------------------------------------------

struct GenMapArgs {
  std::string family = "line";
  std::vector<std::size_t> dims;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string format = "json";
  bool with_strategy = false;
  std::string out;
};

sr::CouplingMap map_for(const std::string& family, std::size_t n, const std::vector<std::size_t>& dims) {
  if (!dims.empty()) {
    if (family == sr::CouplingMap::kUnrolledHeavyHex) {
      if (dims.size() != 1) throw sr::Error(sr::ErrorCode::InvalidDims, "unrolled heavy-hex takes one line length");
      return sr::CouplingMap::unrolled_heavy_hex(dims[0]);
    }
    return sr::build_coupling_map(sr::family_from_string(family), dims);
  }
  if (n == 0) throw sr::Error(sr::ErrorCode::InvalidDims, "give --dims or --n");
  return sr::bench_map(sr::bench_topology_from_string(family), n);
}

int run_gen_map(const GenMapArgs& a) {
  const sr::CouplingMap map = map_for(a.family, a.n, a.dims);
  if (a.format == "text") {
    emit(a.out, sr::to_edge_list(map));
    return kExitOk;
  }
  auto j = nlohmann::json::parse(sr::to_json(map));
  if (a.with_strategy) j["swap_layers"] = nlohmann::json::parse(sr::to_json(sr::default_strategy(map))).at("layers");
  emit(a.out, j.dump());
  return kExitOk;
}

// --- route -----------------------------------------------------------------

struct RouteArgs {
  CircuitArgs circuit;
  std::string strategy = "default";
  std::string strategy_file;
  std::string order = "cancelling";
  std::string partition = "greedy";
  bool verify = false;
  std::optional<double> fidelity;
  double epsilon = 0.1;
  std::string qasm;
  std::string layers;
  std::string report;
};

int run_route(const RouteArgs& a) {
  const std::string problem_text = sr::read_file(a.circuit.problem);
  const std::string map_text = sr::read_file(a.circuit.map);
  const sr::ProblemGraph graph = sr::read_problem(a.circuit.problem);
  const sr::CouplingMap map = sr::read_coupling_map(a.circuit.map);
  const sr::AbstractCircuit circuit = build_circuit(graph, a.circuit);

  sr::RouteOptions options;
  if (a.order == "fusable") options.order = sr::SubsetOrder::AllFusableLast;
  if (a.partition == "coloring") options.partition = sr::Partition::Coloring;

  std::optional<sr::SwapStrategy> strategy;
  std::string strategy_digest;
  if (a.strategy == "file") {
    const std::string text = a.strategy_file.empty() ? map_text : sr::read_file(a.strategy_file);
    strategy.emplace(sr::strategy_from_json(map, text));
  } else if (a.strategy == "default") {
    strategy.emplace(sr::default_strategy(map));
  }
  if (strategy) strategy_digest = sr::digest(sr::to_json(*strategy));

  const auto start = std::chrono::steady_clock::now();
  const sr::RoutedCircuit routed = strategy ? sr::route(circuit, *strategy, options) : sr::route_baseline(circuit, map);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  sr::RunReport report = sr::make_report(routed);
  report.problem_digest = sr::digest(problem_text);
  report.map_digest = sr::digest(map_text);
  report.strategy_digest = strategy_digest;
  report.router = strategy ? "strategy" : "baseline";
  report.rounds = a.circuit.rounds;
  report.transpile_seconds = elapsed.count();
  if (a.verify && routed.num_qubits <= sr::DenseOperator::kMaxQubits) {
    sr::check_layers(routed, map);
    const sr::Verdict verdict = sr::verify_circuit(routed, circuit);
    report.verified = verdict.equivalent;
    report.oracle_distance = verdict.distance;
  }
  if (a.fidelity && routed.cnot_layer_count > 0) {
    const double l_cx = static_cast<double>(routed.cnot_count) / static_cast<double>(routed.cnot_layer_count);
    report.criterion = sr::criterion_check(static_cast<double>(routed.cnot_layer_count), l_cx, *a.fidelity, a.epsilon);
  }

  if (!a.qasm.empty()) emit(a.qasm, sr::to_qasm(routed));
  if (!a.layers.empty()) emit(a.layers, sr::to_layer_json(routed));
  emit(a.report, sr::to_json(report));
  return report.verified.value_or(true) ? kExitOk : kExitVerifyFailed;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  CircuitArgs circuit;
  std::string routed;
};

int run_verify(const VerifyArgs& a) {
  const sr::ProblemGraph graph = sr::read_problem(a.circuit.problem);
  const sr::CouplingMap map = sr::read_coupling_map(a.circuit.map);
  const sr::RoutedCircuit routed = sr::routed_from_layer_json(sr::read_file(a.routed));
  nlohmann::json out;
  bool ok = true;
  try {
    sr::check_layers(routed, map);
    out["layers_legal"] = true;
  } catch (const sr::Error& ex) {
    out["layers_legal"] = false;
    out["layer_error"] = ex.what();
    ok = false;
  }
  if (ok) {
    const sr::Verdict verdict = sr::verify_circuit(routed, build_circuit(graph, a.circuit));
    out["distance"] = verdict.distance;
    ok = verdict.equivalent;
  }
  out["verified"] = ok;
  std::cout << out.dump(2) << '\n';
  return ok ? kExitOk : kExitVerifyFailed;
}

// --- density-curve ---------------------------------------------------------

struct DensityArgs {
  std::string family = "line";
  std::size_t n = 0;
  std::vector<std::size_t> dims;
  std::string map;
  std::string strategy_file;
  bool simple = false;
  std::uint64_t seed = 0;
  std::string out;
};

int run_density_curve(const DensityArgs& a) {
  sr::CouplingMap map = !a.map.empty() ? sr::read_coupling_map(a.map)
                        : (a.family == "heavy-hex" && a.dims.empty() && a.n > 0) ? sr::nearest_heavy_hex(a.n)
                                                                                 : map_for(a.family, a.n, a.dims);
  const sr::SwapStrategy strategy =
      !a.strategy_file.empty() ? sr::strategy_from_json(map, sr::read_file(a.strategy_file))
      : a.simple               ? sr::heavy_hex_simple_line_strategy(sr::unfold_heavy_hex(map))
                               : sr::default_strategy(map);
  const std::vector<double> curve = sr::density_curve(strategy);
  std::string csv = fmt::format("# family={} n={} layers={}\nlayers,density,estimate\n",
                                sr::to_string(strategy.family()), map.num_qubits(), strategy.size());
  for (std::size_t layers = 0; layers < curve.size(); ++layers) {
    // Inverse of the leading-order layer estimate, where one exists.
    const double per_unit = sr::estimated_layers(strategy.family(), map.num_qubits(), 1.0);
    const double estimate = std::isfinite(per_unit) && per_unit > 0 ? std::min(1.0, layers / per_unit) : NAN;
    csv += fmt::format("{},{:.6f},{:.6f}\n", layers, curve[layers], estimate);
  }
  emit(a.out, csv);
  return kExitOk;
}

// --- estimate --------------------------------------------------------------

struct EstimateArgs {
  double n = 485;
  double density = 1.0;
  std::string family = "heavy-hex";
  double tau_cx = 400e-9;
  double tau_delay = 0.0;
  double tau_init = 0.0;
  double tau_meas = 0.0;
  double fidelity = 0.99;
  double epsilon = 0.1;
  std::optional<double> rounds;
  std::string shots_policy = "fixed";
  std::optional<double> shots;
  std::string iters_policy = "log2";
  std::string depth_policy = "log2";
  unsigned mitigation = 1;
  std::string sweep = "none";
  std::uint64_t seed = 0;
  std::string out;
};

std::string estimate_sweep(const EstimateArgs& a, sr::Family family, const sr::HardwareModel& hw,
                           const sr::ShotsPolicy& shots, const sr::ItersPolicy& iters, sr::DepthPolicy depth) {
  if (a.sweep == "fidelity") {
    std::vector<double> densities, infidelities;
    for (int k = 1; k <= 20; ++k) densities.push_back(k / 20.0);
    for (int k = 0; k <= 24; ++k) infidelities.push_back(std::pow(10.0, -5.0 + k * 0.125));
    const double eps[] = {0.1, 0.01};
    const sr::FidelityHeatmap heat =
        sr::fidelity_heatmap(a.n, family, densities, infidelities, a.rounds.value_or(1.0), eps);
    std::string csv = "# contours";
    for (double c : heat.contours) csv += fmt::format(",{:.6f}", c);
    return csv + "\n" + sr::to_csv(heat);
  }
  std::string csv = "n,density,tau_shot,tau_total_hours\n";
  for (double n = 10; n <= 1000; n += 10) {
    for (double d : {0.1, 0.5, 1.0}) {
      const sr::RuntimeBreakdown r = sr::total_time(n, d, family, hw, shots, iters, depth, a.mitigation);
      csv += fmt::format("{},{},{:.9g},{:.9g}\n", n, d, r.tau_shot, r.tau_total / 3600.0);
    }
  }
  return csv;
}

int run_estimate(const EstimateArgs& a) {
  const sr::Family family = sr::family_from_string(a.family);
  sr::HardwareModel hw;
  hw.f_cx_error = 1.0 - a.fidelity;
  hw.tau_cx = a.tau_cx;
  hw.tau_delay = a.tau_delay;
  hw.tau_init = a.tau_init;
  hw.tau_meas_reset = a.tau_meas;
  hw.validate();
  sr::ShotsPolicy shots = sr::parse_shots_policy(a.shots_policy);
  if (a.shots) shots = {sr::ShotsPolicy::Kind::Fixed, *a.shots};
  const sr::ItersPolicy iters = sr::parse_iters_policy(a.iters_policy);
  sr::DepthPolicy depth = sr::DepthPolicy::Log2;
  if (a.depth_policy == "log2-floor") {
    depth = sr::DepthPolicy::Log2Floor;
  } else if (a.depth_policy != "log2") {
    throw sr::Error(sr::ErrorCode::InvalidPolicy, "depth policy must be log2 or log2-floor");
  }

  if (a.sweep != "none") {
    emit(a.out, estimate_sweep(a, family, hw, shots, iters, depth));
    return kExitOk;
  }
  const sr::TableEstimate counts = sr::count_table_estimates(family, a.n, a.density);
  const double rounds = a.rounds.value_or(depth == sr::DepthPolicy::Log2 ? std::log2(a.n) : std::floor(std::log2(a.n)));
  const sr::CriterionResult crit = sr::criterion_check(rounds, a.n, a.density, family, a.fidelity, a.epsilon);
  const sr::RuntimeBreakdown run = sr::total_time(a.n, a.density, family, hw, shots, iters, depth, a.mitigation);
  const sr::RuntimeBreakdown floored =
      sr::total_time(a.n, a.density, family, hw, shots, iters, sr::DepthPolicy::Log2Floor, a.mitigation);

  nlohmann::json j;
  j["input"] = {{"n", a.n}, {"density", a.density}, {"family", a.family}, {"tau_cx", a.tau_cx},
                {"fidelity", a.fidelity}, {"epsilon", a.epsilon}, {"rounds", rounds}};
  j["counts"] = {{"swap_layers", counts.swap_layers}, {"cnot_layers", counts.cnot_layers},
                 {"cnot_total", counts.cnot_total}, {"cnots_per_layer", counts.cnots_per_layer},
                 {"lower_bound", counts.lower_bound}};
  j["criterion"] = {{"lhs", crit.lhs}, {"rhs", crit.rhs}, {"satisfied", crit.satisfied},
                    {"epsilon_star", crit.epsilon_star}, {"whole_layers", crit.whole_layers}};
  j["runtime"] = {{"tau_shot", run.tau_shot}, {"tau_circ", run.tau_circ}, {"n_shots", run.n_shots},
                  {"n_iter", run.n_iter}, {"tau_total", run.tau_total}, {"tau_total_hours", run.tau_total / 3600.0},
                  {"tau_shot_floored_depth", floored.tau_shot}, {"tau_total_floored_depth", floored.tau_total}};
  emit(a.out, j.dump(2));
  return kExitOk;
}

// --- bench -----------------------------------------------------------------

struct BenchArgs {
  std::vector<std::string> families = {std::string(sr::CouplingMap::kUnrolledHeavyHex)};
  std::size_t n_min = 10;
  std::size_t n_max = 40;
  std::size_t n_step = 5;
  std::vector<double> densities = {0.2, 0.5, 0.8, 1.0};
  std::size_t seeds = 10;
  std::uint64_t seed = 0;
  bool no_baseline = false;
  std::string format = "csv";
  std::string out;
};

int run_bench(const BenchArgs& a) {
  sr::BenchConfig config;
  for (const auto& f : a.families) config.topologies.push_back(sr::bench_topology_from_string(f));
  for (std::size_t n = a.n_min; n <= a.n_max; n += a.n_step) config.sizes.push_back(n);
  config.densities = a.densities;
  for (std::size_t k = 0; k < a.seeds; ++k) config.seeds.push_back(a.seed + k);
  config.baseline = !a.no_baseline;
  config.threads = sr::default_thread_count();
  const auto points = sr::run_bench(config);
  if (a.format == "json") {
    auto arr = nlohmann::json::array();
    auto stats = [](const sr::RouterStats& s) {
      auto sum = [](const sr::Summary& m) { return nlohmann::json{{"mean", m.mean}, {"std", m.stddev}, {"median", m.median}}; };
      return nlohmann::json{{"cnot_count", sum(s.cnot_count)}, {"cnot_layers", sum(s.cnot_layers)}, {"seconds", sum(s.seconds)}};
    };
    for (const auto& p : points) {
      nlohmann::json row{{"topology", sr::to_string(p.topology)}, {"n", p.n}, {"map_qubits", p.map_qubits},
                         {"density", p.density}, {"strategy", stats(p.strategy)}};
      if (config.baseline) row["baseline"] = stats(p.baseline);
      arr.push_back(std::move(row));
    }
    emit(a.out, arr.dump(2));
  } else {
    emit(a.out, sr::bench_csv(points));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Swap-strategy routing of QAOA cost layers"};
  app.require_subcommand(1);

  GenProblemArgs gp;
  auto* gen_problem = app.add_subcommand("gen-problem", "random G(n, m) problem with +-1 weights");
  gen_problem->add_option("--n", gp.n)->required();
  gen_problem->add_option("--density", gp.density);
  gen_problem->add_option("--seed", gp.seed);
  gen_problem->add_option("--weights", gp.weights)->check(CLI::IsMember({"pm1", "unit"}));
  gen_problem->add_option("--format", gp.format)->check(CLI::IsMember({"json", "text"}));
  gen_problem->add_option("-o,--out", gp.out);

  GenMapArgs gm;
  auto* gen_map = app.add_subcommand("gen-map", "coupling map of a named family");
  gen_map->add_option("--family", gm.family)->required();
  gen_map->add_option("--dims", gm.dims)->delimiter(',');
  gen_map->add_option("--n", gm.n, "smallest map of the family holding n qubits");
  gen_map->add_option("--seed", gm.seed);
  gen_map->add_option("--format", gm.format)->check(CLI::IsMember({"json", "text"}));
  gen_map->add_flag("--with-strategy", gm.with_strategy, "embed the default strategy as swap_layers");
  gen_map->add_option("-o,--out", gm.out);

  RouteArgs ra;
  auto* route = app.add_subcommand("route", "route a QAOA circuit onto a coupling map");
  add_circuit_options(route, ra.circuit);
  route->add_option("--strategy", ra.strategy)->check(CLI::IsMember({"default", "file", "baseline"}));
  route->add_option("--strategy-file", ra.strategy_file, "JSON with 'layers' or 'swap_layers'");
  route->add_option("--order", ra.order)->check(CLI::IsMember({"cancelling", "fusable"}));
  route->add_option("--partition", ra.partition)->check(CLI::IsMember({"greedy", "coloring"}));
  route->add_flag("--verify", ra.verify, "check the unitary for up to 12 qubits");
  route->add_option("--fidelity", ra.fidelity, "CNOT fidelity for the depth criterion");
  route->add_option("--epsilon", ra.epsilon);
  route->add_option("--qasm", ra.qasm, "write OpenQASM here");
  route->add_option("--layers", ra.layers, "write the JSON layer dump here");
  route->add_option("--report", ra.report, "write the run report here (default stdout)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check a JSON layer dump against its problem");
  add_circuit_options(verify, va.circuit);
  verify->add_option("--routed", va.routed, "JSON layer dump")->required();

  DensityArgs da;
  auto* density = app.add_subcommand("density-curve", "reachable density after each swap layer");
  density->add_option("--family", da.family);
  density->add_option("--n", da.n);
  density->add_option("--dims", da.dims)->delimiter(',');
  density->add_option("--map", da.map);
  density->add_option("--strategy-file", da.strategy_file);
  density->add_flag("--simple", da.simple, "heavy-hex: line strategy on the unfolded line only");
  density->add_option("--seed", da.seed);
  density->add_option("-o,--out", da.out);

  EstimateArgs ea;
  auto* estimate = app.add_subcommand("estimate", "depth criterion and execution-time estimate");
  estimate->add_option("--n", ea.n);
  estimate->add_option("--density", ea.density);
  estimate->add_option("--family", ea.family);
  estimate->add_option("--tau-cx", ea.tau_cx, "CNOT duration in seconds");
  estimate->add_option("--tau-delay", ea.tau_delay);
  estimate->add_option("--tau-init", ea.tau_init);
  estimate->add_option("--tau-meas", ea.tau_meas);
  estimate->add_option("--fidelity", ea.fidelity, "CNOT fidelity");
  estimate->add_option("--epsilon", ea.epsilon);
  estimate->add_option("--p", ea.rounds, "QAOA rounds for the criterion (default log2 n)");
  estimate->add_option("--shots-policy", ea.shots_policy, "fixed[:k] or quadratic");
  estimate->add_option("--shots", ea.shots, "fixed shot count");
  estimate->add_option("--iters-policy", ea.iters_policy, "log2, single or fixed:k");
  estimate->add_option("--depth-policy", ea.depth_policy, "log2 or log2-floor");
  estimate->add_option("--mitigation", ea.mitigation, "shot multiplier for error mitigation");
  estimate->add_option("--sweep", ea.sweep)->check(CLI::IsMember({"none", "fidelity", "runtime"}));
  estimate->add_option("--seed", ea.seed);
  estimate->add_option("-o,--out", ea.out);

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "strategy vs baseline on random instances");
  bench->add_option("--families", ba.families)->delimiter(',');
  bench->add_option("--n-min", ba.n_min);
  bench->add_option("--n-max", ba.n_max);
  bench->add_option("--n-step", ba.n_step)->check(CLI::PositiveNumber);
  bench->add_option("--densities", ba.densities)->delimiter(',');
  bench->add_option("--seeds", ba.seeds, "random graphs per point");
  bench->add_option("--seed", ba.seed, "first seed");
  bench->add_flag("--no-baseline", ba.no_baseline);
  bench->add_option("--format", ba.format)->check(CLI::IsMember({"csv", "json"}));
  bench->add_option("-o,--out", ba.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_problem) return run_gen_problem(gp);
    if (*gen_map) return run_gen_map(gm);
    if (*route) return run_route(ra);
    if (*verify) return run_verify(va);
    if (*density) return run_density_curve(da);
    if (*estimate) return run_estimate(ea);
    if (*bench) return run_bench(ba);
  } catch (const sr::Error& e) {
    std::cerr << "error [" << sr::to_string(e.code()) << "]: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
