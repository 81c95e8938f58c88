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

#include "swaproute/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "json.hpp"
#include "swaproute/error.hpp"

namespace swaproute {

std::string_view to_string(StrategyFamily family) {
  switch (family) {
    case StrategyFamily::LineOptimal:
      return "line";
    case StrategyFamily::Grid2D:
      return "grid2d";
    case StrategyFamily::Grid3D:
      return "grid3d";
    case StrategyFamily::HeavyHexFull:
      return "heavy-hex";
    case StrategyFamily::HeavyHexSimpleLine:
      return "heavy-hex-simple";
    case StrategyFamily::Custom:
      return "custom";
  }
  return "custom";
}

SwapStrategy::SwapStrategy(CouplingMap map, std::vector<SwapLayer> layers, StrategyFamily family)
    : map_(std::move(map)), layers_(std::move(layers)), family_(family) {
  std::vector<std::size_t> stamp(map_.num_qubits(), std::numeric_limits<std::size_t>::max());
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    for (const Edge& e : layers_[k]) {
      if (e.v >= map_.num_qubits() || !map_.has_edge(e.u, e.v)) {
        throw Error(ErrorCode::InvalidLayer, "layer " + std::to_string(k) + " swaps a non-edge");
      }
      if (stamp[e.u] == k || stamp[e.v] == k) {
        throw Error(ErrorCode::InvalidLayer, "layer " + std::to_string(k) + " is not a matching");
      }
      stamp[e.u] = k;
      stamp[e.v] = k;
    }
  }
}

namespace {

std::vector<SwapLayer> line_layers(std::span<const Qubit> order, std::size_t count) {
  SwapLayer even;
  SwapLayer odd;
  for (std::size_t p = 0; p + 1 < order.size(); ++p) {
    (p % 2 == 0 ? even : odd).emplace_back(order[p], order[p + 1]);
  }
  std::vector<SwapLayer> layers;
  layers.reserve(count);
  for (std::size_t t = 0; t < count; ++t) layers.push_back(t % 2 == 0 ? even : odd);
  return layers;
}

}  // namespace

SwapStrategy line_strategy(std::size_t n) {
  CouplingMap map = CouplingMap::line(n);
  std::vector<Qubit> order(n);
  for (std::size_t q = 0; q < n; ++q) order[q] = static_cast<Qubit>(q);
  return SwapStrategy(std::move(map), line_layers(order, n > 2 ? n - 2 : 0), StrategyFamily::LineOptimal);
}

std::size_t qubit_position_after(std::size_t n, std::size_t i, std::size_t k) {
  if (i >= n || k > n) throw Error(ErrorCode::OutOfRange, "need i < n and k <= n");
  const auto si = static_cast<long long>(i);
  const auto sk = static_cast<long long>(k);
  const auto sn = static_cast<long long>(n);
  const long long p = i % 2 == 0 ? std::min(si + sk, 2 * sn - si - 1 - sk)
                                 : std::max(si - sk, -si + sk - 1);
  return static_cast<std::size_t>(p);
}

std::size_t grid_layer_count(std::size_t x) {
  if (x < 2) return 0;
  return (x - 1) / 2 * (x + 1) + (x - 1);
}

std::size_t grid_layer_upper_bound(std::size_t x) { return (x + 1) / 2 * (x + 1); }

namespace {

// Row/column schedule on a side-x grid: x-1 row layers alternating the two
// row classes, then both column classes, repeated ceil((x-2)/2) times, then
// x-1 closing row layers. Element values index {row0, row1, col0, col1}.
std::vector<int> grid_schedule(std::size_t x) {
  std::vector<int> out;
  const std::size_t reps = x > 2 ? (x - 1) / 2 : 0;
  for (std::size_t r = 0; r < reps; ++r) {
    for (std::size_t t = 0; t + 1 < x; ++t) out.push_back(static_cast<int>(t % 2));
    out.push_back(2);
    out.push_back(3);
  }
  for (std::size_t t = 0; t + 1 < x; ++t) out.push_back(static_cast<int>(t % 2));
  return out;
}

SwapStrategy grid2d_strategy(const CouplingMap& map) {
  const std::size_t x = map.dims()[0];
  std::vector<SwapLayer> cls(4);
  for (const Edge& e : map.edges()) {
    const std::size_t r = e.u / x;
    const std::size_t c = e.u % x;
    if (e.v == e.u + 1) {
      cls[(r + c) % 2].push_back(e);
    } else {
      cls[2 + r % 2].push_back(e);
    }
  }
  std::vector<SwapLayer> layers;
  for (int s : grid_schedule(x)) layers.push_back(cls[static_cast<std::size_t>(s)]);
  return SwapStrategy(map, std::move(layers), StrategyFamily::Grid2D);
}

// Each x-line is interleaved with a 2D schedule over the (y, z) grid of
// x-lines: before every step of that schedule, and once after it, the x-lines
// run x-1 layers of their own alternation with a counter shared across blocks.
SwapStrategy grid3d_strategy(const CouplingMap& map) {
  const std::size_t x = map.dims()[0];
  std::vector<SwapLayer> xs(2);
  std::vector<SwapLayer> plane(4);
  for (const Edge& e : map.edges()) {
    const std::size_t c = e.u % x;
    const std::size_t r = (e.u / x) % x;
    const std::size_t p = e.u / (x * x);
    if (e.v == e.u + 1) {
      xs[(c + r + p) % 2].push_back(e);
    } else if (e.v == e.u + x) {
      plane[(r + p) % 2].push_back(e);
    } else {
      plane[2 + p % 2].push_back(e);
    }
  }
  std::vector<SwapLayer> layers;
  std::size_t t = 0;
  auto x_block = [&] {
    for (std::size_t b = 0; b + 1 < x; ++b, ++t) layers.push_back(xs[t % 2]);
  };
  for (int s : grid_schedule(x)) {
    x_block();
    layers.push_back(plane[static_cast<std::size_t>(s)]);
  }
  x_block();
  return SwapStrategy(map, std::move(layers), StrategyFamily::Grid3D);
}

}  // namespace

SwapStrategy grid_strategy(std::size_t x, std::size_t eta) {
  if (x < 2) throw Error(ErrorCode::InvalidDims, "grid strategy needs x >= 2");
  if (eta == 2) return grid2d_strategy(CouplingMap::grid2d(x, x));
  if (eta == 3) return grid3d_strategy(CouplingMap::grid3d(x, x, x));
  throw Error(ErrorCode::InvalidDims, "grid dimension must be 2 or 3");
}

SwapStrategy grid_strategy(const CouplingMap& map) {
  const auto dims = map.dims();
  if (map.family() != Family::Grid2D && map.family() != Family::Grid3D) {
    throw Error(ErrorCode::UnknownFamily, "not a grid map");
  }
  if (!std::all_of(dims.begin(), dims.end(), [&](std::size_t d) { return d == dims[0]; })) {
    throw Error(ErrorCode::NonSquare, "grid strategy needs equal side lengths");
  }
  if (dims[0] < 2) throw Error(ErrorCode::InvalidDims, "grid strategy needs x >= 2");
  return map.family() == Family::Grid2D ? grid2d_strategy(map) : grid3d_strategy(map);
}

std::size_t heavy_hex_block_length(std::size_t line_length) {
  const std::size_t quarter = line_length / 4;
  return quarter - quarter % 8 + 10;
}

namespace {

void check_unfolding(const UnfoldedHeavyHex& u) {
  const std::size_t l = u.line_order.size();
  if (l < 8 || l % 4 != 0) throw Error(ErrorCode::BadUnfolding, "line length must be a multiple of 4");
  for (const auto& [p, q] : u.dangling) {
    if (p >= l || p % 4 != 1) throw Error(ErrorCode::BadUnfolding, "dangling qubit off the p % 4 == 1 grid");
    if (!u.map.has_edge(u.line_order[p], q)) throw Error(ErrorCode::BadUnfolding, "dangling qubit not adjacent");
  }
  if (!u.tail_long.empty() && u.tail_long.size() % 4 != 2) {
    throw Error(ErrorCode::BadUnfolding, "long tail length must be 2 mod 4");
  }
}

}  // namespace

SwapStrategy heavy_hex_strategy(const UnfoldedHeavyHex& u) {
  check_unfolding(u);
  const std::size_t l = u.line_order.size();
  const std::size_t k = heavy_hex_block_length(l);
  SwapLayer odd;
  SwapLayer even;
  for (std::size_t p = 0; p + 1 < l; ++p) {
    (p % 2 == 1 ? odd : even).emplace_back(u.line_order[p], u.line_order[p + 1]);
  }
  SwapLayer to_a;
  SwapLayer to_b;
  for (const auto& [p, q] : u.dangling) {
    (p % 8 == 1 ? to_a : to_b).emplace_back(u.line_order[p], q);
  }
  std::vector<SwapLayer> layers;
  layers.reserve(5 * (k + 2));
  for (int round = 0; round < 5; ++round) {
    for (std::size_t t = 0; t + 7 < k; ++t) layers.push_back(t % 2 == 0 ? odd : even);
    layers.push_back(to_b);
    for (std::size_t t = 0; t < 7; ++t) layers.push_back(t % 2 == 0 ? even : odd);
    layers.push_back(to_a);
  }
  return SwapStrategy(u.map, std::move(layers), StrategyFamily::HeavyHexFull);
}

SwapStrategy heavy_hex_simple_line_strategy(const UnfoldedHeavyHex& u) {
  const std::size_t l = u.line_order.size();
  return SwapStrategy(
      u.map, line_layers(u.line_order, l > 2 ? l - 2 : 0), StrategyFamily::HeavyHexSimpleLine);
}

SwapStrategy default_strategy(const CouplingMap& map) {
  switch (map.family()) {
    case Family::Line: {
      std::vector<Qubit> order(map.num_qubits());
      for (std::size_t q = 0; q < order.size(); ++q) order[q] = static_cast<Qubit>(q);
      const std::size_t n = order.size();
      return SwapStrategy(map, line_layers(order, n > 2 ? n - 2 : 0), StrategyFamily::LineOptimal);
    }
    case Family::Grid2D:
    case Family::Grid3D:
      return grid_strategy(map);
    case Family::HeavyHex:
      return heavy_hex_strategy(unfold_heavy_hex(map));
    case Family::Custom:
      if (map.label() == CouplingMap::kUnrolledHeavyHex) return heavy_hex_strategy(unfold_heavy_hex(map));
      break;
  }
  throw Error(ErrorCode::UnknownFamily, "custom maps need an explicit strategy");
}

bool ReachabilityGraph::insert(Qubit a, Qubit b) {
  if (a == b || bits_[a * n_ + b]) return false;
  bits_[a * n_ + b] = 1;
  bits_[b * n_ + a] = 1;
  ++pairs_;
  return true;
}

double ReachabilityGraph::density() const noexcept {
  if (n_ < 2) return 1.0;
  return static_cast<double>(pairs_) / (0.5 * static_cast<double>(n_) * static_cast<double>(n_ - 1));
}

namespace {

template <typename OnStep>
ReachabilityGraph simulate(const SwapStrategy& s, std::size_t layers, OnStep&& on_step) {
  const CouplingMap& map = s.map();
  ReachabilityGraph g(map.num_qubits());
  std::vector<Qubit> label(map.num_qubits());
  for (std::size_t q = 0; q < label.size(); ++q) label[q] = static_cast<Qubit>(q);
  auto record = [&] {
    for (const Edge& e : map.edges()) g.insert(label[e.u], label[e.v]);
  };
  record();
  on_step(g);
  for (std::size_t k = 0; k < layers; ++k) {
    for (const Edge& e : s.layers()[k]) std::swap(label[e.u], label[e.v]);
    record();
    on_step(g);
  }
  return g;
}

}  // namespace

ReachabilityGraph reachability(const SwapStrategy& strategy, std::size_t layers) {
  if (layers > strategy.size()) throw Error(ErrorCode::OutOfRange, "more layers than the strategy has");
  return simulate(strategy, layers, [](const ReachabilityGraph&) {});
}

std::vector<double> density_curve(const SwapStrategy& strategy) {
  std::vector<double> out;
  out.reserve(strategy.size() + 1);
  simulate(strategy, strategy.size(), [&](const ReachabilityGraph& g) { out.push_back(g.density()); });
  return out;
}

double estimated_layers(StrategyFamily family, std::size_t n, double density) {
  const double dn = density * static_cast<double>(n);
  switch (family) {
    case StrategyFamily::LineOptimal:
      return (static_cast<double>(n) - 2.0) * density;
    case StrategyFamily::Grid2D:
      return dn / 2.0;
    case StrategyFamily::Grid3D:
      return dn / 4.0;
    case StrategyFamily::HeavyHexFull:
      return dn;
    case StrategyFamily::HeavyHexSimpleLine:
    case StrategyFamily::Custom:
      break;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

LayerRequirement min_layers_for_density(const SwapStrategy& strategy, double density) {
  if (!(density > 0.0 && density <= 1.0)) throw Error(ErrorCode::InvalidDensity, "density must lie in (0, 1]");
  const auto curve = density_curve(strategy);
  // Densities are ratios of integers; compare pair counts to avoid rounding.
  const std::size_t n = strategy.map().num_qubits();
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n > 0 ? n - 1 : 0);
  const double needed = std::ceil(density * pairs - 1e-9);
  for (std::size_t L = 0; L < curve.size(); ++L) {
    if (std::round(curve[L] * pairs) >= needed) {
      return {L, estimated_layers(strategy.family(), n, density)};
    }
  }
  throw Error(
      ErrorCode::Unreachable,
      "strategy saturates at density " + std::to_string(curve.back()));
}

std::string to_json(const SwapStrategy& strategy) {
  nlohmann::json j;
  j["family"] = std::string(to_string(strategy.family()));
  auto layers = nlohmann::json::array();
  for (const SwapLayer& layer : strategy.layers()) {
    auto arr = nlohmann::json::array();
    for (const Edge& e : layer) arr.push_back({e.u, e.v});
    layers.push_back(std::move(arr));
  }
  j["layers"] = std::move(layers);
  return j.dump();
}

SwapStrategy strategy_from_json(const CouplingMap& map, std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    const auto& arr = j.contains("layers") ? j.at("layers") : j.at("swap_layers");
    std::vector<SwapLayer> layers;
    for (const auto& layer : arr) {
      SwapLayer out;
      for (const auto& e : layer) {
        if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::InvalidInput, "swap must be [u, v]");
        out.emplace_back(e[0].get<Qubit>(), e[1].get<Qubit>());
      }
      layers.push_back(std::move(out));
    }
    return SwapStrategy(map, std::move(layers), StrategyFamily::Custom);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::InvalidInput, std::string("strategy JSON: ") + ex.what());
  }
}

}  // namespace swaproute
