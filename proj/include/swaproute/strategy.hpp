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

/**
 * @file strategy.hpp
 * @brief Predefined swap strategies and their reachability analysis.
 *
 * A swap strategy is an ordered list of swap layers, each a matching of
 * coupling-map edges. Running the layers permutes the qubits so that every
 * pair of logical qubits becomes adjacent at some point; the reachability
 * graph records which pairs did within the first L layers.
 */

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "swaproute/topology.hpp"

namespace swaproute {

using SwapLayer = std::vector<Edge>;

enum class StrategyFamily { LineOptimal, Grid2D, Grid3D, HeavyHexFull, HeavyHexSimpleLine, Custom };

std::string_view to_string(StrategyFamily family);

class SwapStrategy {
 public:
  /// Throws InvalidLayer if a layer uses a non-edge or is not a matching.
  SwapStrategy(CouplingMap map, std::vector<SwapLayer> layers, StrategyFamily family = StrategyFamily::Custom);

  const CouplingMap& map() const noexcept { return map_; }
  std::span<const SwapLayer> layers() const noexcept { return layers_; }
  std::size_t size() const noexcept { return layers_.size(); }
  StrategyFamily family() const noexcept { return family_; }

 private:
  CouplingMap map_;
  std::vector<SwapLayer> layers_;
  StrategyFamily family_;
};

/// Even edges, odd edges, even edges, ... for max(n - 2, 0) layers.
SwapStrategy line_strategy(std::size_t n);

/// Position of the qubit starting at `i` after `k` alternating line layers.
std::size_t qubit_position_after(std::size_t n, std::size_t i, std::size_t k);

/// Square (eta = 2) or cubic (eta = 3) grid of side x.
SwapStrategy grid_strategy(std::size_t x, std::size_t eta);
/// Throws NonSquare unless all grid dimensions agree.
SwapStrategy grid_strategy(const CouplingMap& map);

/// ceil((x-2)/2) repetitions of x+1 layers plus x-1 closing layers.
std::size_t grid_layer_count(std::size_t x);
/// ceil(x/2) (x+1).
std::size_t grid_layer_upper_bound(std::size_t x);

/// l/4 - (l/4 mod 8) + 10 for a line of length l.
std::size_t heavy_hex_block_length(std::size_t line_length);

/// Five rounds of (k-7 line layers, B layer, 7 line layers, A layer).
SwapStrategy heavy_hex_strategy(const UnfoldedHeavyHex& unfolding);
/// The line strategy on the unfolded line only; off-line qubits never move.
SwapStrategy heavy_hex_simple_line_strategy(const UnfoldedHeavyHex& unfolding);

/// Family default: line, grid, heavy-hex full (also for unrolled heavy-hex).
SwapStrategy default_strategy(const CouplingMap& map);

/// Pairs of qubit labels that were adjacent at some step <= L.
class ReachabilityGraph {
 public:
  explicit ReachabilityGraph(std::size_t n) : n_(n), bits_(n * n, 0) {}

  std::size_t num_qubits() const noexcept { return n_; }
  bool contains(Qubit a, Qubit b) const { return bits_[a * n_ + b] != 0; }
  /// Returns true when the pair is new.
  bool insert(Qubit a, Qubit b);
  std::size_t pair_count() const noexcept { return pairs_; }
  double density() const noexcept;

 private:
  std::size_t n_;
  std::vector<unsigned char> bits_;
  std::size_t pairs_ = 0;
};

ReachabilityGraph reachability(const SwapStrategy& strategy, std::size_t layers);

/// Density after L = 0 .. size() layers.
std::vector<double> density_curve(const SwapStrategy& strategy);

struct LayerRequirement {
  std::size_t layers = 0;
  double estimate = 0.0;  // leading-order closed form for the family
};

/// Smallest L whose reachability density is >= D; throws Unreachable.
LayerRequirement min_layers_for_density(const SwapStrategy& strategy, double density);

/// Closed-form swap layer count for density D; NaN for custom strategies.
double estimated_layers(StrategyFamily family, std::size_t n, double density);

std::string to_json(const SwapStrategy& strategy);
/// Reads {"layers": [[[u, v], ...], ...]} or a map document's "swap_layers".
SwapStrategy strategy_from_json(const CouplingMap& map, std::string_view text);

}  // namespace swaproute
