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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../support.hpp"
#include "swaproute/bench.hpp"
#include "swaproute/error.hpp"
#include "swaproute/estimator.hpp"
#include "swaproute/io.hpp"
#include "swaproute/oracle.hpp"
#include "swaproute/problem.hpp"
#include "swaproute/router.hpp"
#include "swaproute/strategy.hpp"

using namespace swaproute;
using namespace swaproute::testing;

namespace {

/// Collects failed sub-checks of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 6) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void note(const std::string& text) { notes_.push_back(text); }
  bool ok() const { return failed_ == 0; }
  std::string detail() const {
    std::ostringstream os;
    for (const auto& n : notes_) os << "; " << n;
    for (const auto& f : failures_) os << "; failed: " << f;
    if (failed_ > failures_.size()) os << "; +" << failed_ - failures_.size() << " more";
    return os.str();
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
  std::size_t failed_ = 0;
};

std::string str(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::size_t full_at(const SwapStrategy& s) {
  const std::size_t n = s.map().num_qubits();
  const auto edges = edges_of(s.map());
  const auto layers = layers_of(s);
  for (std::size_t k = 0; k <= layers.size(); ++k) {
    if (simulate_pairs(n, edges, layers, k).size() == n * (n - 1) / 2) return k;
  }
  return SIZE_MAX;
}

// 1. Line strategy lemmas.
void line_lemmas(Check& c) {
  for (std::size_t n = 2; n <= 40; ++n) {
    const auto s = line_strategy(n);
    c.expect(full_at(s) == (n > 2 ? n - 2 : 0), "full connectivity at n-2, n=" + std::to_string(n));
    std::vector<std::size_t> pos(n);  // logical -> position
    for (std::size_t i = 0; i < n; ++i) pos[i] = i;
    std::vector<std::size_t> at(pos);  // position -> logical
    for (std::size_t k = 0; k <= n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (qubit_position_after(n, i, k) != pos[i]) {
          c.expect(false, "position n=" + std::to_string(n) + " i=" + std::to_string(i) + " k=" + std::to_string(k));
        }
      }
      if (k == n) break;
      // Layer k + 1 swaps (j, j+1) for j with the parity of k.
      for (std::size_t j = k % 2; j + 1 < n; j += 2) {
        std::swap(at[j], at[j + 1]);
        pos[at[j]] = j;
        pos[at[j + 1]] = j + 1;
      }
    }
    bool reversed = true;
    for (std::size_t i = 0; i < n; ++i) reversed &= pos[i] == n - 1 - i;
    c.expect(reversed, "reversal at k=n, n=" + std::to_string(n));
  }
}

// 2. No matching sequence on a line of n <= 7 reaches every pair in fewer
// than n - 2 layers.
bool reaches_all(std::size_t n, std::size_t depth, std::vector<std::uint8_t>& at, std::uint32_t seen,
                 const std::vector<std::vector<std::size_t>>& matchings,
                 const std::function<std::uint32_t(std::size_t, std::size_t)>& bit, std::uint32_t all) {
  if (seen == all) return true;
  if (depth == 0) return false;
  for (const auto& m : matchings) {
    for (std::size_t j : m) std::swap(at[j], at[j + 1]);
    std::uint32_t next = seen;
    for (std::size_t j = 0; j + 1 < n; ++j) next |= bit(at[j], at[j + 1]);
    const bool found = reaches_all(n, depth - 1, at, next, matchings, bit, all);
    for (std::size_t j : m) std::swap(at[j], at[j + 1]);
    if (found) return true;
  }
  return false;
}

void line_optimality(Check& c) {
  for (std::size_t n = 3; n <= 7; ++n) {
    std::vector<std::vector<std::size_t>> matchings;  // left endpoints of the swapped edges
    for (std::uint32_t mask = 1; mask < (1U << (n - 1)); ++mask) {
      if (mask & (mask >> 1)) continue;
      std::vector<std::size_t> m;
      for (std::size_t j = 0; j + 1 < n; ++j) {
        if (mask & (1U << j)) m.push_back(j);
      }
      matchings.push_back(m);
    }
    std::map<std::pair<std::size_t, std::size_t>, std::uint32_t> index;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) index[{a, b}] = 1U << index.size();
    }
    auto bit = [&](std::size_t a, std::size_t b) { return index.at(std::minmax(a, b)); };
    const std::uint32_t all = static_cast<std::uint32_t>((1ULL << index.size()) - 1);
    std::vector<std::uint8_t> at(n);
    std::uint32_t start = 0;
    for (std::size_t j = 0; j < n; ++j) at[j] = static_cast<std::uint8_t>(j);
    for (std::size_t j = 0; j + 1 < n; ++j) start |= bit(j, j + 1);
    c.expect(!reaches_all(n, n - 3, at, start, matchings, bit, all),
             "a shorter sequence exists for n=" + std::to_string(n));
    c.expect(reaches_all(n, n - 2, at, start, matchings, bit, all), "n-2 layers suffice, n=" + std::to_string(n));
  }
}

// 3. Grid and heavy-hex connectivity bounds.
void connectivity_bounds(Check& c) {
  for (std::size_t x = 2; x <= 10; ++x) {
    const auto s = grid_strategy(CouplingMap::grid2d(x, x));
    const double n = static_cast<double>(x * x);
    const double bound = std::min(static_cast<double>(grid_layer_count(x)), n / 2 + std::sqrt(n) + 0.5);
    c.expect(static_cast<double>(full_at(s)) <= bound, "grid x=" + std::to_string(x));
  }
  for (std::size_t i = 1; i <= 3; ++i) {
    for (std::size_t j = 1; j <= 3; ++j) {
      const std::string tag = "heavy-hex " + std::to_string(i) + "x" + std::to_string(j);
      const auto u = unfold_heavy_hex(CouplingMap::heavy_hex(i, j));
      const auto s = heavy_hex_strategy(u);
      const double n = static_cast<double>(u.map.num_qubits());
      const double k = static_cast<double>(heavy_hex_block_length(u.line_order.size()));
      c.expect(static_cast<double>(full_at(s)) <= 5 * k + 10, tag + " full connectivity");
      c.expect(5 * k + 10 <= n + std::sqrt(n) + 61, tag + " block bound");

      std::vector<Qubit> at(u.map.num_qubits());
      for (std::size_t q = 0; q < at.size(); ++q) at[q] = static_cast<Qubit>(q);
      std::vector<int> entries(at.size(), 0);
      std::vector<bool> off_line(at.size(), false);
      for (const auto& [p, q] : u.dangling) off_line[q] = true;
      for (const auto& layer : s.layers()) {
        for (const Edge& e : layer) {
          std::swap(at[e.u], at[e.v]);
          if (off_line[e.u] != off_line[e.v]) ++entries[at[off_line[e.u] ? e.u : e.v]];
        }
      }
      c.expect(std::ranges::all_of(entries, [](int e) { return e <= 1; }), tag + " swapped into A/B twice");
    }
  }
}

// Removes the first unfused swap, CX(a,b) CX(b,a) CX(a,b) back to back on
// the same pair. Returns false when there is none.
bool drop_swap(RoutedCircuit& r) {
  struct Ref {
    std::size_t layer, slot;
  };
  auto next_on = [&](Qubit a, Qubit b, std::size_t from) -> std::optional<Ref> {
    for (std::size_t l = from; l < r.layers.size(); ++l) {
      for (std::size_t s = 0; s < r.layers[l].size(); ++s) {
        const Primitive& p = r.layers[l][s];
        if (p.q0 == a || p.q0 == b || p.q1 == a || p.q1 == b) return Ref{l, s};
      }
    }
    return std::nullopt;
  };
  auto is_cx = [&](const std::optional<Ref>& ref, Qubit c, Qubit t) {
    if (!ref) return false;
    const Primitive& p = r.layers[ref->layer][ref->slot];
    return p.kind == PrimitiveKind::CX && p.q0 == c && p.q1 == t;
  };
  for (std::size_t l = 0; l < r.layers.size(); ++l) {
    for (std::size_t s = 0; s < r.layers[l].size(); ++s) {
      const Primitive p = r.layers[l][s];
      if (p.kind != PrimitiveKind::CX) continue;
      const auto second = next_on(p.q0, p.q1, l + 1);
      if (!is_cx(second, p.q1, p.q0)) continue;
      const auto third = next_on(p.q0, p.q1, second->layer + 1);
      if (!is_cx(third, p.q0, p.q1)) continue;
      for (const Ref& ref : {*third, *second, Ref{l, s}}) {
        r.layers[ref.layer].erase(r.layers[ref.layer].begin() + static_cast<std::ptrdiff_t>(ref.slot));
      }
      return true;
    }
  }
  return false;
}

bool flip_angle(RoutedCircuit& r) {
  for (auto& layer : r.layers) {
    for (auto& p : layer) {
      if (p.kind == PrimitiveKind::RZ && std::abs(std::sin(p.angle)) > 1e-3) {
        p.angle = -p.angle;
        return true;
      }
    }
  }
  return false;
}

// 4. Dense-operator equivalence of routed random instances.
void oracle_equivalence(Check& c) {
  const BenchTopology families[] = {BenchTopology::Line, BenchTopology::Grid2D, BenchTopology::Grid3D,
                                    BenchTopology::HeavyHex};
  const double densities[] = {0.3, 0.6, 1.0};
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> angle(0.05, 3.0);
  std::size_t verified = 0, swaps_dropped = 0, angles_flipped = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const std::size_t n = 3 + i % 6;
    const double d = densities[(i / 4) % 3];
    const auto map = bench_map(families[i % 4], n);
    const auto g = random_gnm(n, d, i);
    const double gamma = angle(rng);
    const auto circuit = cost_layer_circuit(g, gamma);
    const std::string tag = "instance " + std::to_string(i);
    for (bool baseline : {false, true}) {
      const auto r = baseline ? route_baseline(circuit, map) : route(circuit, default_strategy(map));
      const bool ok = verify_equivalence(r, g, gamma);
      c.expect(ok, tag + (baseline ? " baseline" : " strategy"));
      verified += ok;
      auto dropped = r;
      if (drop_swap(dropped)) {
        ++swaps_dropped;
        c.expect(!verify_equivalence(dropped, g, gamma), tag + " dropped swap undetected");
      }
      auto flipped = r;
      if (flip_angle(flipped)) {
        ++angles_flipped;
        c.expect(!verify_equivalence(flipped, g, gamma), tag + " flipped angle undetected");
      }
    }
  }
  c.expect(swaps_dropped >= 20, "too few swap mutations");
  c.expect(angles_flipped >= 100, "too few angle mutations");
  c.note(std::to_string(verified) + "/200 routed circuits equivalent");
  c.note(std::to_string(swaps_dropped) + " dropped-swap and " + std::to_string(angles_flipped) +
         " flipped-angle mutants rejected");
}

AbstractCircuit qaoa(const ProblemGraph& g, std::size_t p) {
  std::vector<double> gammas, betas;
  for (std::size_t k = 0; k < p; ++k) {
    gammas.push_back(0.4 + 0.05 * static_cast<double>(k));
    betas.push_back(0.6 - 0.05 * static_cast<double>(k));
  }
  return build_qaoa_circuit(g, gammas, betas);
}

// 5. Seven-qubit device counts.
void nairobi_counts(Check& c) {
  const auto g = read_problem(fixture("g10.json"));
  const auto map = read_coupling_map(fixture("nairobi.json"));
  const auto strategy = strategy_from_json(map, read_file(fixture("nairobi.json")));
  std::string counts;
  for (std::size_t p = 1; p <= 4; ++p) {
    const auto circuit = qaoa(g, p);
    const auto r = route(circuit, strategy);
    counts += (p > 1 ? "/" : "") + std::to_string(r.cnot_count);
    c.expect(r.cnot_count == 24 * p, "p=" + std::to_string(p) + " gives " + std::to_string(r.cnot_count));
    c.expect(verify_circuit(r, circuit).equivalent, "p=" + std::to_string(p) + " not equivalent");
  }
  c.note("cnot counts " + counts);
}

// 6. Complete graphs against the per-family CNOT bound.
void complete_graph_bounds(Check& c) {
  auto check = [&](const SwapStrategy& s, const std::string& tag) {
    const std::size_t n = s.map().num_qubits();
    const auto r = route(cost_layer_circuit(complete_graph(n), 0.3), s);
    c.expect(r.segments.size() == 1 && r.cnot_count <= cnot_count_bound(s.map(), r.segments[0]), tag);
    return r;
  };
  for (std::size_t n = 2; n <= 60; ++n) check(line_strategy(n), "line n=" + std::to_string(n));
  for (std::size_t x = 2; x <= 8; ++x) check(grid_strategy(CouplingMap::grid2d(x, x)), "grid x=" + std::to_string(x));
  for (std::size_t i = 1; i <= 3; ++i) {
    for (std::size_t j = 1; j <= 3; ++j) {
      check(heavy_hex_strategy(unfold_heavy_hex(CouplingMap::heavy_hex(i, j))),
            "heavy-hex " + std::to_string(i) + "x" + std::to_string(j));
    }
  }
  const auto line60 = route(cost_layer_circuit(complete_graph(60), 0.3), line_strategy(60));
  const double ratio = static_cast<double>(line60.cnot_count) / (1.5 * 60 * 60);
  c.expect(ratio >= 0.9 && ratio <= 1.0, "line ratio " + str(ratio));
  c.note("line n=60 ratio " + str(ratio));
}

// 7. Criterion numbers for the two small devices.
void criterion_numbers(Check& c) {
  const auto loose = criterion_check(12.0, 2.0, 0.9888, 0.1);
  const auto tight = criterion_check(12.0, 2.0, 0.9888, 0.01);
  const auto four = criterion_check(48.0, 2.0, 0.9888, 0.1);
  const auto mumbai = criterion_check(6.0, 28.0 / 3.0, 0.9905, 0.1);
  c.expect(std::lround(loose.rhs) == 52, "eps=0.1 bound " + str(loose.rhs));
  c.expect(std::lround(tight.rhs) == 103, "eps=0.01 bound " + str(tight.rhs));
  c.expect(std::abs(four.epsilon_star - 0.115) <= 1e-3, "epsilon* " + str(four.epsilon_star));
  c.expect(std::lround(mumbai.rhs) == 13,
           "27-qubit bound " + str(mumbai.rhs) + " rounds to " + std::to_string(std::lround(mumbai.rhs)) +
               " (floor " + str(mumbai.whole_layers) + ")");
  c.note("bounds " + str(loose.rhs) + ", " + str(tight.rhs) + ", " + str(mumbai.rhs) + "; epsilon* " +
         str(four.epsilon_star));
}

// 8. Runtime model.
void runtime_model(Check& c) {
  const HardwareModel hw;
  const double shot = shot_time(485, 1.0, Family::HeavyHex, hw);
  const auto full = total_time(485, 1.0, Family::HeavyHex, hw, ShotsPolicy{}, ItersPolicy{});
  const auto single =
      total_time(500, 1.0, Family::HeavyHex, hw, ShotsPolicy{}, ItersPolicy{ItersPolicy::Kind::Single, 1.0});
  c.expect(std::abs(shot / 14.9e-3 - 1.0) <= 0.1, "shot time " + str(shot));
  c.expect(std::abs(full.tau_total / 3600.0 / 9.7 - 1.0) <= 0.1, "total " + str(full.tau_total / 3600.0) + " h");
  c.expect(single.tau_total < 180.0, "single iteration " + str(single.tau_total) + " s");
  c.note("shot " + str(shot * 1e3) + " ms, total " + str(full.tau_total / 3600.0) + " h, single " +
         str(single.tau_total) + " s");
}

// 9. Strategy router against the greedy baseline on the unrolled heavy-hex.
void bench_claims(Check& c) {
  BenchConfig config;
  config.topologies = {BenchTopology::UnrolledHeavyHex};
  config.sizes = {20, 30, 40};
  config.densities = {1.0};
  for (std::uint64_t s = 0; s < 10; ++s) config.seeds.push_back(s);
  config.threads = default_thread_count();
  for (const auto& p : run_bench(config)) {
    const std::string tag = "n=" + std::to_string(p.n);
    c.expect(p.strategy.cnot_count.median <= p.baseline.cnot_count.median,
             tag + " cnot median " + str(p.strategy.cnot_count.median) + " vs baseline " +
                 str(p.baseline.cnot_count.median));
    c.expect(p.strategy.seconds.median < p.baseline.seconds.median, tag + " transpile time");
    c.note(tag + " cnot " + str(p.strategy.cnot_count.median) + " vs " + str(p.baseline.cnot_count.median) +
           ", seconds " + str(p.strategy.seconds.median) + " vs " + str(p.baseline.seconds.median));
  }
}

// Histogram of cut values over all assignments with x_{n-1} = 0, walked in
// Gray-code order. Values are keyed by twice the cut to stay integral.
std::map<long, std::uint64_t> cut_histogram(const ProblemGraph& g) {
  const std::size_t n = g.num_vars();
  std::vector<std::vector<std::pair<std::size_t, long>>> adj(n);
  for (const auto& t : g.terms()) {
    const long w = std::lround(2 * t.weight);
    adj[t.i].push_back({t.j, w});
    adj[t.j].push_back({t.i, w});
  }
  std::map<long, std::uint64_t> hist;
  std::vector<std::uint64_t> dense(4 * 64 + 1, 0);  // offset buckets for small values
  constexpr long kOffset = 128;
  std::vector<std::uint8_t> x(n, 0);
  long cut = 0;
  const std::uint64_t count = 1ULL << (n - 1);
  for (std::uint64_t k = 0;; ++k) {
    if (cut + kOffset >= 0 && cut + kOffset < static_cast<long>(dense.size())) {
      ++dense[static_cast<std::size_t>(cut + kOffset)];
    } else {
      ++hist[cut];
    }
    if (k + 1 == count) break;
    const std::size_t v = static_cast<std::size_t>(std::countr_zero(k + 1));
    for (const auto& [u, w] : adj[v]) cut += x[u] == x[v] ? w : -w;
    x[v] ^= 1U;
  }
  for (std::size_t b = 0; b < dense.size(); ++b) {
    if (dense[b]) hist[static_cast<long>(b) - kOffset] += dense[b];
  }
  return hist;
}

// 10. Fixture integrity by exhaustive enumeration.
void fixture_integrity(Check& c) {
  const auto g10 = read_problem(fixture("g10.json"));
  const auto h10 = cut_histogram(g10);
  c.expect(h10.rbegin()->first == 6, "g10 max cut " + str(h10.rbegin()->first / 2.0));

  const auto mumbai = read_problem(fixture("mumbai27.json"));
  const auto hist = cut_histogram(mumbai);
  // Fixing one variable halves every count; complements are the other half.
  auto solutions = [&](long twice) { return hist.contains(twice) ? 2 * hist.at(twice) : 0; };
  const long best = hist.rbegin()->first;
  c.expect(best == 24, "mumbai max cut " + str(best / 2.0));
  c.expect(solutions(24) == 2, "optima " + std::to_string(solutions(24)));
  c.expect(solutions(22) == 12, "value-11 cuts " + std::to_string(solutions(22)));
  c.expect(solutions(20) == 212, "value-10 cuts " + std::to_string(solutions(20)));
  c.note("g10 max " + str(h10.rbegin()->first / 2.0) + "; 27-var max " + str(best / 2.0) + " with " +
         std::to_string(solutions(24)) + "/" + std::to_string(solutions(22)) + "/" + std::to_string(solutions(20)) +
         " cuts at 12/11/10 (advisory weights)");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    void (*run)(Check&);
  };
  const Criterion criteria[] = {
      {"line strategy lemmas", line_lemmas},
      {"line optimality by exhaustive search", line_optimality},
      {"grid and heavy-hex connectivity bounds", connectivity_bounds},
      {"oracle equivalence and mutants", oracle_equivalence},
      {"seven-qubit device CNOT counts", nairobi_counts},
      {"complete-graph CNOT bounds", complete_graph_bounds},
      {"fidelity criterion numbers", criterion_numbers},
      {"runtime model", runtime_model},
      {"strategy versus baseline on unrolled heavy-hex", bench_claims},
      {"fixture integrity", fixture_integrity},
  };
  int failed = 0;
  int index = 0;
  for (const auto& criterion : criteria) {
    ++index;
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !check.ok();
    std::printf("%s %d %s (%.2f s)%s\n", check.ok() ? "PASS" : "FAIL", index, criterion.name, seconds,
                check.detail().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
