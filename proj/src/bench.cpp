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

#include "swaproute/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "swaproute/error.hpp"
#include "swaproute/problem.hpp"
#include "swaproute/router.hpp"
#include "swaproute/strategy.hpp"

namespace swaproute {

std::string_view to_string(BenchTopology topology) {
  switch (topology) {
    case BenchTopology::Line:
      return "line";
    case BenchTopology::Grid2D:
      return "grid2d";
    case BenchTopology::Grid3D:
      return "grid3d";
    case BenchTopology::HeavyHex:
      return "heavy-hex";
    case BenchTopology::UnrolledHeavyHex:
      return CouplingMap::kUnrolledHeavyHex;
  }
  return "line";
}

BenchTopology bench_topology_from_string(std::string_view name) {
  if (name == CouplingMap::kUnrolledHeavyHex) return BenchTopology::UnrolledHeavyHex;
  switch (family_from_string(name)) {
    case Family::Line:
      return BenchTopology::Line;
    case Family::Grid2D:
      return BenchTopology::Grid2D;
    case Family::Grid3D:
      return BenchTopology::Grid3D;
    case Family::HeavyHex:
      return BenchTopology::HeavyHex;
    case Family::Custom:
      break;
  }
  throw Error(ErrorCode::UnknownFamily, "no bench topology '" + std::string(name) + "'");
}

namespace {

std::size_t heavy_hex_qubits(std::size_t i, std::size_t j) { return 5 * i * j + 4 * (i + j) - 1; }

// Among i <= j, the best (i, j) under `better`.
template <typename Better>
CouplingMap pick_heavy_hex(std::size_t n, Better better) {
  std::size_t bi = 1;
  std::size_t bj = 1;
  for (std::size_t i = 1; heavy_hex_qubits(i, i) <= 2 * n + 12; ++i) {
    for (std::size_t j = i; heavy_hex_qubits(i, j) <= 2 * n + 12; ++j) {
      if (better(heavy_hex_qubits(i, j), heavy_hex_qubits(bi, bj))) {
        bi = i;
        bj = j;
      }
    }
  }
  return CouplingMap::heavy_hex(bi, bj);
}

std::size_t ceil_root(std::size_t n, int degree) {
  auto r = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(n), 1.0 / degree)));
  auto power = [&](std::size_t x) { return degree == 2 ? x * x : x * x * x; };
  while (r > 1 && power(r - 1) >= n) --r;
  while (power(r) < n) ++r;
  return std::max<std::size_t>(r, 2);
}

}  // namespace

CouplingMap nearest_heavy_hex(std::size_t n) {
  auto gap = [n](std::size_t q) { return q > n ? q - n : n - q; };
  return pick_heavy_hex(n, [&](std::size_t cand, std::size_t best) {
    return gap(cand) < gap(best) || (gap(cand) == gap(best) && cand < best);
  });
}

CouplingMap bench_map(BenchTopology topology, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidDims, "bench maps need at least two qubits");
  switch (topology) {
    case BenchTopology::Line:
      return CouplingMap::line(n);
    case BenchTopology::Grid2D: {
      const std::size_t x = ceil_root(n, 2);
      return CouplingMap::grid2d(x, x);
    }
    case BenchTopology::Grid3D: {
      const std::size_t x = ceil_root(n, 3);
      return CouplingMap::grid3d(x, x, x);
    }
    case BenchTopology::HeavyHex:
      return pick_heavy_hex(n, [n](std::size_t cand, std::size_t best) {
        return cand >= n && (best < n || cand < best);
      });
    case BenchTopology::UnrolledHeavyHex:
      return CouplingMap::unrolled_heavy_hex(4 * ((n + 4) / 5));
  }
  throw Error(ErrorCode::UnknownFamily, "unknown bench topology");
}

Summary summarize(std::vector<double> samples) {
  Summary s;
  if (samples.empty()) return s;
  const double count = static_cast<double>(samples.size());
  for (double x : samples) s.mean += x;
  s.mean /= count;
  for (double x : samples) s.stddev += (x - s.mean) * (x - s.mean);
  s.stddev = samples.size() > 1 ? std::sqrt(s.stddev / (count - 1.0)) : 0.0;
  std::sort(samples.begin(), samples.end());
  const std::size_t mid = samples.size() / 2;
  s.median = samples.size() % 2 ? samples[mid] : 0.5 * (samples[mid - 1] + samples[mid]);
  return s;
}

std::size_t default_thread_count() {
  std::size_t threads = std::max<unsigned>(std::thread::hardware_concurrency(), 1U);
  if (const char* cap = std::getenv("SWAPROUTE_THREADS")) {
    const long value = std::strtol(cap, nullptr, 10);
    if (value > 0) threads = std::min(threads, static_cast<std::size_t>(value));
  }
  return threads;
}

namespace {

struct Sample {
  double cnots = 0.0;
  double layers = 0.0;
  double seconds = 0.0;
};

template <typename Fn>
Sample timed(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  const RoutedCircuit routed = fn();
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return {static_cast<double>(routed.cnot_count), static_cast<double>(routed.cnot_layer_count), elapsed.count()};
}

RouterStats stats_of(const std::vector<Sample>& samples) {
  std::vector<double> c, l, t;
  for (const Sample& s : samples) {
    c.push_back(s.cnots);
    l.push_back(s.layers);
    t.push_back(s.seconds);
  }
  return {summarize(c), summarize(l), summarize(t)};
}

constexpr double kBenchGamma = 0.5;

}  // namespace

std::vector<BenchPoint> run_bench(const BenchConfig& config) {
  struct Setup {
    BenchPoint point;
    CouplingMap map;
    SwapStrategy strategy;
  };
  std::vector<Setup> setups;
  for (BenchTopology topology : config.topologies) {
    for (std::size_t n : config.sizes) {
      CouplingMap map = bench_map(topology, n);
      SwapStrategy strategy = default_strategy(map);
      for (double d : config.densities) {
        BenchPoint point;
        point.topology = topology;
        point.n = n;
        point.map_qubits = map.num_qubits();
        point.density = d;
        setups.push_back({point, map, strategy});
      }
    }
  }

  const std::size_t per_point = config.seeds.size();
  std::vector<Sample> strategy_samples(setups.size() * per_point);
  std::vector<Sample> baseline_samples(setups.size() * per_point);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t task = next++; task < strategy_samples.size() && !failed; task = next++) {
      try {
        const Setup& setup = setups[task / per_point];
        const ProblemGraph graph = random_gnm(setup.point.n, setup.point.density, config.seeds[task % per_point]);
        const AbstractCircuit circuit = cost_layer_circuit(graph, kBenchGamma);
        strategy_samples[task] = timed([&] { return route(circuit, setup.strategy); });
        if (config.baseline) baseline_samples[task] = timed([&] { return route_baseline(circuit, setup.map); });
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t threads = std::clamp<std::size_t>(config.threads, 1, std::max<std::size_t>(strategy_samples.size(), 1));
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<BenchPoint> out;
  for (std::size_t p = 0; p < setups.size(); ++p) {
    BenchPoint point = setups[p].point;
    const auto first = static_cast<std::ptrdiff_t>(p * per_point);
    const auto last = first + static_cast<std::ptrdiff_t>(per_point);
    point.strategy = stats_of({strategy_samples.begin() + first, strategy_samples.begin() + last});
    if (config.baseline) point.baseline = stats_of({baseline_samples.begin() + first, baseline_samples.begin() + last});
    out.push_back(point);
  }
  return out;
}

std::string bench_csv(const std::vector<BenchPoint>& points) {
  std::ostringstream os;
  os.precision(8);
  os << "topology,n,map_qubits,density,router,cnot_mean,cnot_std,cnot_median,"
        "depth_mean,depth_std,depth_median,seconds_mean,seconds_std,seconds_median\n";
  auto row = [&](const BenchPoint& p, std::string_view router, const RouterStats& s) {
    os << to_string(p.topology) << ',' << p.n << ',' << p.map_qubits << ',' << p.density << ',' << router;
    for (const Summary* m : {&s.cnot_count, &s.cnot_layers, &s.seconds}) {
      os << ',' << m->mean << ',' << m->stddev << ',' << m->median;
    }
    os << '\n';
  };
  for (const BenchPoint& p : points) {
    row(p, "strategy", p.strategy);
    row(p, "baseline", p.baseline);
  }
  return os.str();
}

}  // namespace swaproute
