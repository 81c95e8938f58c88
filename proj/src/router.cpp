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

#include "swaproute/router.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "swaproute/error.hpp"

namespace swaproute {

QubitMapping::QubitMapping(std::vector<Qubit> logical_to_physical)
    : to_physical_(std::move(logical_to_physical)), to_logical_(to_physical_.size()) {
  std::vector<bool> seen(to_physical_.size(), false);
  for (std::size_t l = 0; l < to_physical_.size(); ++l) {
    const Qubit p = to_physical_[l];
    if (p >= to_physical_.size() || seen[p]) throw Error(ErrorCode::MappingInvalid, "mapping is not a permutation");
    seen[p] = true;
    to_logical_[p] = static_cast<Qubit>(l);
  }
}

QubitMapping QubitMapping::identity(std::size_t n) {
  std::vector<Qubit> v(n);
  std::iota(v.begin(), v.end(), Qubit{0});
  return QubitMapping(std::move(v));
}

void QubitMapping::swap_physical(Qubit a, Qubit b) {
  const Qubit la = to_logical_.at(a);
  const Qubit lb = to_logical_.at(b);
  to_logical_[a] = lb;
  to_logical_[b] = la;
  to_physical_[la] = b;
  to_physical_[lb] = a;
}

std::size_t RoutedCircuit::swap_layers_used() const noexcept {
  std::size_t total = 0;
  for (const auto& s : segments) total += s.swap_layer_sizes.size();
  return total;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

enum class OpKind { H, RX, RZZ, SWAP };

// Gate on physical qubits prior to CNOT decomposition.
struct PhysOp {
  OpKind kind;
  Qubit a;
  Qubit b;
  double angle;
  std::size_t segment;  // kNone for single-qubit ops
  std::size_t layer;    // swap layer index within the segment
};

PhysOp single_qubit_op(const Gate& g, const QubitMapping& m) {
  const OpKind kind = g.kind == GateKind::H ? OpKind::H : OpKind::RX;
  const Qubit p = m.physical(g.q0);
  return {kind, p, p, g.angle, kNone, 0};
}

// Decomposes to CX/RZ/RX/H, fusing an RZZ into the SWAP that directly follows
// it on the same pair, and packs primitives into ASAP layers.
RoutedCircuit lower(
    std::size_t n, const std::vector<PhysOp>& ops, std::vector<SegmentStats> segments,
    QubitMapping initial, QubitMapping final_mapping) {
  std::vector<std::size_t> fused_rzz(ops.size(), kNone);
  std::vector<bool> absorbed(ops.size(), false);
  std::vector<std::size_t> last(n, kNone);
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const PhysOp& op = ops[k];
    if (op.kind == OpKind::SWAP) {
      const std::size_t r = last[op.a];
      if (r != kNone && r == last[op.b] && ops[r].kind == OpKind::RZZ &&
          Edge(ops[r].a, ops[r].b) == Edge(op.a, op.b)) {
        fused_rzz[k] = r;
        absorbed[r] = true;
      }
    }
    last[op.a] = k;
    last[op.b] = k;
  }

  RoutedCircuit out;
  out.num_qubits = n;
  out.initial_mapping = std::move(initial);
  out.final_mapping = std::move(final_mapping);
  std::vector<std::size_t> depth(n, 0);
  std::size_t segment = kNone;
  auto place = [&](Primitive p) {
    std::size_t at = depth[p.q0];
    if (p.two_qubit()) at = std::max(at, depth[p.q1]);
    if (at >= out.layers.size()) out.layers.resize(at + 1);
    out.layers[at].push_back(p);
    depth[p.q0] = at + 1;
    if (p.two_qubit()) {
      depth[p.q1] = at + 1;
      ++out.cnot_count;
      if (segment != kNone) ++segments[segment].cnot_count;
    }
  };
  auto cx = [&](Qubit c, Qubit t) { place({PrimitiveKind::CX, c, t, 0.0}); };
  auto rz = [&](Qubit q, double theta) { place({PrimitiveKind::RZ, q, q, theta}); };

  for (std::size_t k = 0; k < ops.size(); ++k) {
    const PhysOp& op = ops[k];
    segment = op.segment;
    const Edge e(op.a, op.b);
    switch (op.kind) {
      case OpKind::H:
        place({PrimitiveKind::H, op.a, op.a, 0.0});
        break;
      case OpKind::RX:
        place({PrimitiveKind::RX, op.a, op.a, op.angle});
        break;
      case OpKind::RZZ:
        if (absorbed[k]) break;
        cx(e.u, e.v);
        rz(e.v, op.angle);
        cx(e.u, e.v);
        break;
      case OpKind::SWAP:
        ++out.swap_count;
        if (fused_rzz[k] != kNone) {
          cx(e.u, e.v);
          rz(e.v, ops[fused_rzz[k]].angle);
          cx(e.v, e.u);
          cx(e.u, e.v);
          ++out.rzz_absorbed_count;
        } else {
          cx(e.u, e.v);
          cx(e.v, e.u);
          cx(e.u, e.v);
        }
        break;
    }
  }
  for (const auto& layer : out.layers) {
    if (std::any_of(layer.begin(), layer.end(), [](const Primitive& p) { return p.two_qubit(); })) {
      ++out.cnot_layer_count;
    }
  }
  out.segments = std::move(segments);
  return out;
}

void check_inputs(const AbstractCircuit& circuit, const CouplingMap& map, const QubitMapping& initial) {
  if (circuit.num_qubits > map.num_qubits()) {
    throw Error(ErrorCode::MappingInvalid, "circuit has more qubits than the coupling map");
  }
  if (initial.size() != map.num_qubits()) {
    throw Error(ErrorCode::MappingInvalid, "initial mapping must cover every physical qubit");
  }
  for (const auto& set : circuit.sets) {
    for (const Gate& g : set.gates) {
      if (g.q0 >= circuit.num_qubits || g.q1 >= circuit.num_qubits) {
        throw Error(ErrorCode::OutOfRange, "gate on qubit outside the circuit");
      }
    }
  }
}

using Subset = std::vector<const Gate*>;

std::vector<Subset> greedy_subsets(const std::vector<const Gate*>& gates, const QubitMapping& m) {
  std::vector<Subset> subsets;
  std::vector<std::size_t> busy;  // per physical qubit: subset index + 1 that uses it
  std::vector<const Gate*> pending = gates;
  while (!pending.empty()) {
    Subset current;
    std::vector<const Gate*> rest;
    std::vector<Qubit> used;
    for (const Gate* g : pending) {
      const Qubit a = m.physical(g->q0);
      const Qubit b = m.physical(g->q1);
      if (std::find(used.begin(), used.end(), a) == used.end() &&
          std::find(used.begin(), used.end(), b) == used.end()) {
        current.push_back(g);
        used.push_back(a);
        used.push_back(b);
      } else {
        rest.push_back(g);
      }
    }
    subsets.push_back(std::move(current));
    pending = std::move(rest);
  }
  return subsets;
}

std::vector<Subset> coloring_subsets(
    const std::vector<const Gate*>& gates, const QubitMapping& m, const CouplingMap& map,
    std::span<const std::size_t> colors) {
  std::size_t palette = 0;
  for (std::size_t c : colors) palette = std::max(palette, c + 1);
  std::vector<Subset> by_color(palette);
  for (const Gate* g : gates) {
    const std::size_t idx = *map.edge_index(m.physical(g->q0), m.physical(g->q1));
    by_color[colors[idx]].push_back(g);
  }
  std::stable_sort(by_color.begin(), by_color.end(), [](const Subset& x, const Subset& y) {
    return x.size() > y.size();
  });
  while (!by_color.empty() && by_color.back().empty()) by_color.pop_back();
  return by_color;
}

class StrategyRouter {
 public:
  StrategyRouter(const SwapStrategy& strategy, const RouteOptions& options)
      : strategy_(strategy), map_(strategy.map()), options_(options) {
    if (options_.partition == Partition::Coloring) {
      colors_ = map_.coloring() ? *map_.coloring() : edge_coloring(map_);
    }
  }

  RoutedCircuit run(const AbstractCircuit& circuit, const QubitMapping& initial) {
    check_inputs(circuit, map_, initial);
    QubitMapping m = initial;
    for (const auto& set : circuit.sets) {
      if (!set.two_qubit()) {
        for (const Gate& g : set.gates) ops_.push_back(single_qubit_op(g, m));
        continue;
      }
      route_set(set, m);
    }
    return lower(map_.num_qubits(), ops_, std::move(segments_), initial, m);
  }

 private:
  bool in_layer(const Gate* g, const QubitMapping& m, const std::vector<char>& flags) const {
    return flags[*map_.edge_index(m.physical(g->q0), m.physical(g->q1))] != 0;
  }

  void route_set(const CommutingSet& set, QubitMapping& m) {
    const std::size_t seg = segments_.size();
    segments_.emplace_back();
    segments_[seg].rzz_count = set.gates.size();
    const std::size_t seg_begin = ops_.size();
    const QubitMapping seg_start = m;

    std::vector<const Gate*> remaining;
    remaining.reserve(set.gates.size());
    for (const Gate& g : set.gates) remaining.push_back(&g);

    const auto layers = strategy_.layers();
    std::vector<char> flags(map_.edges().size(), 0);
    for (std::size_t j = 0;; ++j) {
      std::vector<const Gate*> ready;
      std::vector<const Gate*> rest;
      for (const Gate* g : remaining) {
        (map_.has_edge(m.physical(g->q0), m.physical(g->q1)) ? ready : rest).push_back(g);
      }
      remaining = std::move(rest);
      const SwapLayer* next = !remaining.empty() && j < layers.size() ? &layers[j] : nullptr;
      if (!remaining.empty() && next == nullptr) throw_exhausted(remaining);

      std::fill(flags.begin(), flags.end(), 0);
      if (next) {
        for (const Edge& e : *next) flags[*map_.edge_index(e.u, e.v)] = 1;
      }
      for (const Subset& subset : order_subsets(ready, m, next ? &flags : nullptr)) {
        for (const Gate* g : subset) {
          ops_.push_back({OpKind::RZZ, m.physical(g->q0), m.physical(g->q1), g->angle, seg, 0});
        }
      }
      if (remaining.empty()) break;
      for (const Edge& e : *next) {
        ops_.push_back({OpKind::SWAP, e.u, e.v, 0.0, seg, j});
        m.swap_physical(e.u, e.v);
      }
    }
    drop_idle_swaps(seg, seg_begin, seg_start, m);
  }

  std::vector<Subset> order_subsets(
      const std::vector<const Gate*>& ready, const QubitMapping& m, const std::vector<char>* flags) const {
    std::vector<Subset> subsets = options_.partition == Partition::Coloring
                                      ? coloring_subsets(ready, m, map_, colors_)
                                      : greedy_subsets(ready, m);
    if (flags == nullptr || subsets.empty()) return subsets;

    if (options_.order == SubsetOrder::AllFusableLast) {
      Subset fusable;
      std::vector<Subset> out;
      for (const Subset& s : subsets) {
        Subset keep;
        for (const Gate* g : s) (in_layer(g, m, *flags) ? fusable : keep).push_back(g);
        if (!keep.empty()) out.push_back(std::move(keep));
      }
      if (!fusable.empty()) out.push_back(std::move(fusable));
      return out;
    }

    std::size_t best = kNone;
    std::size_t best_score = 0;
    for (std::size_t k = 0; k < subsets.size(); ++k) {
      const auto score = static_cast<std::size_t>(std::count_if(
          subsets[k].begin(), subsets[k].end(), [&](const Gate* g) { return in_layer(g, m, *flags); }));
      if (score > 0 && score >= best_score) {
        best = k;
        best_score = score;
      }
    }
    if (best != kNone) std::rotate(subsets.begin() + static_cast<std::ptrdiff_t>(best),
                                   subsets.begin() + static_cast<std::ptrdiff_t>(best) + 1, subsets.end());
    return subsets;
  }

  // Swaps whose qubits see no later gate in this set only relabel qubits.
  void drop_idle_swaps(std::size_t seg, std::size_t begin, const QubitMapping& seg_start, QubitMapping& m) {
    std::vector<bool> live(map_.num_qubits(), false);
    std::vector<bool> drop(ops_.size() - begin, false);
    for (std::size_t k = ops_.size(); k-- > begin;) {
      const PhysOp& op = ops_[k];
      if (op.kind == OpKind::SWAP && !live[op.a] && !live[op.b]) {
        drop[k - begin] = true;
        continue;
      }
      live[op.a] = true;
      live[op.b] = true;
    }
    std::vector<PhysOp> kept;
    kept.reserve(ops_.size() - begin);
    m = seg_start;
    auto& sizes = segments_[seg].swap_layer_sizes;
    for (std::size_t k = begin; k < ops_.size(); ++k) {
      const PhysOp& op = ops_[k];
      if (drop[k - begin]) {
        ++swaps_removed_;
        continue;
      }
      if (op.kind == OpKind::SWAP) {
        m.swap_physical(op.a, op.b);
        if (sizes.size() <= op.layer) sizes.resize(op.layer + 1, 0);
        ++sizes[op.layer];
      }
      kept.push_back(op);
    }
    ops_.resize(begin);
    ops_.insert(ops_.end(), kept.begin(), kept.end());
  }

  [[noreturn]] void throw_exhausted(const std::vector<const Gate*>& remaining) const {
    std::ostringstream os;
    os << remaining.size() << " gate(s) unroutable after " << strategy_.size() << " swap layers:";
    std::size_t shown = 0;
    for (const Gate* g : remaining) {
      if (shown++ == 8) {
        os << " ...";
        break;
      }
      os << ' ' << g->q0 << '-' << g->q1;
    }
    throw Error(ErrorCode::StrategyExhausted, os.str());
  }

  const SwapStrategy& strategy_;
  const CouplingMap& map_;
  RouteOptions options_;
  std::vector<std::size_t> colors_;
  std::vector<PhysOp> ops_;
  std::vector<SegmentStats> segments_;

 public:
  std::size_t swaps_removed_ = 0;
};

}  // namespace

RoutedCircuit route(
    const AbstractCircuit& circuit, const SwapStrategy& strategy, const QubitMapping& initial,
    const RouteOptions& options) {
  StrategyRouter router(strategy, options);
  RoutedCircuit out = router.run(circuit, initial);
  out.swaps_removed = router.swaps_removed_;
  return out;
}

RoutedCircuit route(const AbstractCircuit& circuit, const SwapStrategy& strategy, const RouteOptions& options) {
  return route(circuit, strategy, QubitMapping::identity(strategy.map().num_qubits()), options);
}

RoutedCircuit route_baseline(const AbstractCircuit& circuit, const CouplingMap& map, const QubitMapping& initial) {
  check_inputs(circuit, map, initial);
  const std::size_t n = map.num_qubits();
  const std::vector<std::size_t> dist = map.all_distances();
  auto d = [&](Qubit a, Qubit b) { return dist[a * n + b]; };

  QubitMapping m = initial;
  std::vector<PhysOp> ops;
  std::vector<SegmentStats> segments;
  for (const auto& set : circuit.sets) {
    if (!set.two_qubit()) {
      for (const Gate& g : set.gates) ops.push_back(single_qubit_op(g, m));
      continue;
    }
    const std::size_t seg = segments.size();
    segments.emplace_back();
    segments[seg].rzz_count = set.gates.size();
    const auto& gates = set.gates;
    std::vector<std::vector<std::size_t>> incident(n);
    for (std::size_t g = 0; g < gates.size(); ++g) {
      if (d(m.physical(gates[g].q0), m.physical(gates[g].q1)) == kNone) {
        throw Error(ErrorCode::NoProgress, "gate between disconnected qubits");
      }
      incident[gates[g].q0].push_back(g);
      incident[gates[g].q1].push_back(g);
    }
    std::vector<bool> done(gates.size(), false);
    std::size_t pending = gates.size();
    std::size_t target = kNone;
    std::size_t idle_swaps = 0;

    auto delta_for = [&](const Edge& e) {
      long long delta = 0;
      const Qubit la = m.logical(e.u);
      const Qubit lb = m.logical(e.v);
      for (const auto& [self, from, to] : {std::tuple{la, e.u, e.v}, std::tuple{lb, e.v, e.u}}) {
        for (std::size_t g : incident[self]) {
          if (done[g]) continue;
          const Qubit other = gates[g].q0 == self ? gates[g].q1 : gates[g].q0;
          if (other == la || other == lb) continue;
          const Qubit po = m.physical(other);
          delta += static_cast<long long>(d(to, po)) - static_cast<long long>(d(from, po));
        }
      }
      return delta;
    };

    while (true) {
      bool progressed = false;
      for (std::size_t g = 0; g < gates.size(); ++g) {
        if (done[g]) continue;
        const Qubit a = m.physical(gates[g].q0);
        const Qubit b = m.physical(gates[g].q1);
        if (map.has_edge(a, b)) {
          ops.push_back({OpKind::RZZ, a, b, gates[g].angle, seg, 0});
          done[g] = true;
          --pending;
          progressed = true;
        }
      }
      if (pending == 0) break;
      if (progressed) idle_swaps = 0;
      if (target != kNone && done[target]) target = kNone;

      std::optional<Edge> chosen;
      if (target == kNone) {
        long long best = 0;
        for (const Edge& e : map.edges()) {
          const long long delta = delta_for(e);
          if (delta < best) {
            best = delta;
            chosen = e;
          }
        }
        if (!chosen) {
          std::size_t closest = kNone;
          for (std::size_t g = 0; g < gates.size(); ++g) {
            if (done[g]) continue;
            if (closest == kNone || d(m.physical(gates[g].q0), m.physical(gates[g].q1)) <
                                        d(m.physical(gates[closest].q0), m.physical(gates[closest].q1))) {
              closest = g;
            }
          }
          target = closest;
        }
      }
      if (!chosen) {
        const Qubit a = m.physical(gates[target].q0);
        const Qubit b = m.physical(gates[target].q1);
        for (Qubit nb : map.neighbors(a)) {
          if (d(nb, b) + 1 == d(a, b)) {
            chosen = Edge(a, nb);
            break;
          }
        }
      }
      ops.push_back({OpKind::SWAP, chosen->u, chosen->v, 0.0, seg, 0});
      m.swap_physical(chosen->u, chosen->v);
      if (++idle_swaps > n * n) throw Error(ErrorCode::NoProgress, "no gate executed within n^2 swaps");
    }
  }
  return lower(n, ops, std::move(segments), initial, m);
}

RoutedCircuit route_baseline(const AbstractCircuit& circuit, const CouplingMap& map) {
  return route_baseline(circuit, map, QubitMapping::identity(map.num_qubits()));
}

void check_layers(const RoutedCircuit& routed, const CouplingMap& map) {
  std::vector<std::size_t> stamp(routed.num_qubits, kNone);
  for (std::size_t k = 0; k < routed.layers.size(); ++k) {
    for (const Primitive& p : routed.layers[k]) {
      for (Qubit q : {p.q0, p.q1}) {
        if (q >= routed.num_qubits) throw Error(ErrorCode::MappingInvalid, "gate outside the register");
      }
      if (stamp[p.q0] == k || (p.two_qubit() && stamp[p.q1] == k)) {
        throw Error(ErrorCode::MappingInvalid, "layer " + std::to_string(k) + " reuses a qubit");
      }
      stamp[p.q0] = k;
      if (p.two_qubit()) {
        if (p.q0 == p.q1 || !map.has_edge(p.q0, p.q1)) {
          throw Error(ErrorCode::MappingInvalid, "CX off the coupling map in layer " + std::to_string(k));
        }
        stamp[p.q1] = k;
      }
    }
  }
}

std::size_t cnot_count_bound(const CouplingMap& map, const SegmentStats& segment) {
  const std::size_t swaps = std::accumulate(segment.swap_layer_sizes.begin(), segment.swap_layer_sizes.end(), std::size_t{0});
  return 2 * map.edges().size() * (segment.swap_layer_sizes.size() + 1) - swaps;
}

TableEstimate count_table_estimates(Family family, double n, double density) {
  if (!(density > 0.0 && density <= 1.0)) throw Error(ErrorCode::InvalidDensity, "density must lie in (0, 1]");
  const double dn = density * n;
  TableEstimate t;
  switch (family) {
    case Family::Line:
      t = {dn, 3.0 * dn, 1.5 * dn * n, n / 2.0, false};
      break;
    case Family::Grid2D:
      t = {dn / 2.0, 3.5 * dn, 1.75 * dn * n, n / 2.0, false};
      break;
    case Family::Grid3D:
      t = {dn / 4.0, 2.75 * dn, 1.375 * dn * n, 11.0 * n / 32.0, false};
      break;
    case Family::HeavyHex:
      t = {dn, 9.0 * dn, 1.6 * dn * n, 8.0 * n / 45.0, false};
      break;
    case Family::Custom:
      throw Error(ErrorCode::UnknownFamily, "no closed-form counts for custom maps");
  }
  t.lower_bound = density < 1.0;
  return t;
}

namespace {

std::string_view gate_name(PrimitiveKind k) {
  switch (k) {
    case PrimitiveKind::CX:
      return "cx";
    case PrimitiveKind::RZ:
      return "rz";
    case PrimitiveKind::RX:
      return "rx";
    case PrimitiveKind::H:
      return "h";
  }
  return "h";
}

}  // namespace

std::string to_qasm(const RoutedCircuit& routed) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << routed.num_qubits << "];\n";
  for (const auto& layer : routed.layers) {
    for (const Primitive& p : layer) {
      switch (p.kind) {
        case PrimitiveKind::CX:
          os << "cx q[" << p.q0 << "],q[" << p.q1 << "];\n";
          break;
        case PrimitiveKind::H:
          os << "h q[" << p.q0 << "];\n";
          break;
        default:
          os << gate_name(p.kind) << '(' << p.angle << ") q[" << p.q0 << "];\n";
          break;
      }
    }
  }
  return os.str();
}

std::string to_layer_json(const RoutedCircuit& routed) {
  nlohmann::json j;
  j["num_qubits"] = routed.num_qubits;
  auto layers = nlohmann::json::array();
  for (const auto& layer : routed.layers) {
    auto arr = nlohmann::json::array();
    for (const Primitive& p : layer) {
      nlohmann::json g;
      g["g"] = std::string(gate_name(p.kind));
      if (p.two_qubit()) {
        g["q"] = {p.q0, p.q1};
      } else {
        g["q"] = {p.q0};
      }
      if (p.kind == PrimitiveKind::RZ || p.kind == PrimitiveKind::RX) g["p"] = p.angle;
      arr.push_back(std::move(g));
    }
    layers.push_back(std::move(arr));
  }
  j["layers"] = std::move(layers);
  j["cnot_count"] = routed.cnot_count;
  j["cnot_layer_count"] = routed.cnot_layer_count;
  const auto init = routed.initial_mapping.logical_to_physical();
  const auto fin = routed.final_mapping.logical_to_physical();
  j["initial_mapping"] = std::vector<Qubit>(init.begin(), init.end());
  j["final_mapping"] = std::vector<Qubit>(fin.begin(), fin.end());
  return j.dump();
}

RoutedCircuit routed_from_layer_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    RoutedCircuit out;
    auto fin = j.at("final_mapping").get<std::vector<Qubit>>();
    out.num_qubits = j.value("num_qubits", fin.size());
    out.final_mapping = QubitMapping(std::move(fin));
    out.initial_mapping = j.contains("initial_mapping")
                              ? QubitMapping(j.at("initial_mapping").get<std::vector<Qubit>>())
                              : QubitMapping::identity(out.num_qubits);
    if (out.final_mapping.size() != out.num_qubits || out.initial_mapping.size() != out.num_qubits) {
      throw Error(ErrorCode::LengthMismatch, "mapping length differs from qubit count");
    }
    for (const auto& layer : j.at("layers")) {
      std::vector<Primitive> prims;
      bool has_cx = false;
      for (const auto& g : layer) {
        const auto name = g.at("g").get<std::string>();
        const auto qs = g.at("q").get<std::vector<Qubit>>();
        Primitive p;
        if (name == "cx") {
          if (qs.size() != 2) throw Error(ErrorCode::InvalidInput, "cx needs two qubits");
          p = {PrimitiveKind::CX, qs[0], qs[1], 0.0};
          has_cx = true;
          ++out.cnot_count;
        } else {
          if (qs.size() != 1) throw Error(ErrorCode::InvalidInput, name + " needs one qubit");
          if (name == "rz") {
            p = {PrimitiveKind::RZ, qs[0], qs[0], g.at("p").get<double>()};
          } else if (name == "rx") {
            p = {PrimitiveKind::RX, qs[0], qs[0], g.at("p").get<double>()};
          } else if (name == "h") {
            p = {PrimitiveKind::H, qs[0], qs[0], 0.0};
          } else {
            throw Error(ErrorCode::InvalidInput, "unknown gate '" + name + "'");
          }
        }
        if (p.q0 >= out.num_qubits || p.q1 >= out.num_qubits) throw Error(ErrorCode::OutOfRange, "gate qubit");
        prims.push_back(p);
      }
      if (has_cx) ++out.cnot_layer_count;
      out.layers.push_back(std::move(prims));
    }
    if (j.contains("cnot_count") && j.at("cnot_count").get<std::size_t>() != out.cnot_count) {
      throw Error(ErrorCode::InvalidInput, "cnot_count disagrees with the layers");
    }
    return out;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::InvalidInput, std::string("layer JSON: ") + ex.what());
  }
}

}  // namespace swaproute
