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
 * @file router.hpp
 * @brief Swap-strategy routing of commuting two-qubit gate blocks and a
 * greedy commutation-aware baseline router.
 */

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "swaproute/problem.hpp"
#include "swaproute/strategy.hpp"
#include "swaproute/topology.hpp"

namespace swaproute {

/// Bijective logical -> physical assignment.
class QubitMapping {
 public:
  QubitMapping() = default;
  /// Throws MappingInvalid unless `logical_to_physical` is a permutation.
  explicit QubitMapping(std::vector<Qubit> logical_to_physical);
  static QubitMapping identity(std::size_t n);

  std::size_t size() const noexcept { return to_physical_.size(); }
  Qubit physical(Qubit logical) const { return to_physical_.at(logical); }
  Qubit logical(Qubit physical) const { return to_logical_.at(physical); }
  std::span<const Qubit> logical_to_physical() const noexcept { return to_physical_; }
  /// Exchanges whatever sits on the two physical qubits.
  void swap_physical(Qubit a, Qubit b);

  bool operator==(const QubitMapping&) const = default;

 private:
  std::vector<Qubit> to_physical_;
  std::vector<Qubit> to_logical_;
};

enum class PrimitiveKind { CX, RZ, RX, H };

/// For CX, q0 is the control and q1 the target.
struct Primitive {
  PrimitiveKind kind = PrimitiveKind::H;
  Qubit q0 = 0;
  Qubit q1 = 0;
  double angle = 0.0;

  bool two_qubit() const noexcept { return kind == PrimitiveKind::CX; }
};

/// Bookkeeping for one routed block of commuting two-qubit gates.
struct SegmentStats {
  std::vector<std::size_t> swap_layer_sizes;  // swaps kept per applied layer
  std::size_t rzz_count = 0;
  std::size_t cnot_count = 0;
};

struct RoutedCircuit {
  std::size_t num_qubits = 0;
  std::vector<std::vector<Primitive>> layers;
  QubitMapping initial_mapping;
  QubitMapping final_mapping;
  std::size_t cnot_count = 0;
  std::size_t cnot_layer_count = 0;
  std::size_t rzz_absorbed_count = 0;
  std::size_t swap_count = 0;
  std::size_t swaps_removed = 0;
  std::vector<SegmentStats> segments;

  std::size_t swap_layers_used() const noexcept;
};

/**
 * Order in which the executable gates of one routing step are emitted.
 *
 * The gates are first split greedily, in problem-term order, into subsets of
 * vertex-disjoint gates. CancellingSubsetLast then moves the subset with the
 * most gates on edges of the next swap layer to the end, so those gates fuse
 * with their swaps. AllFusableLast pulls every such gate into one final
 * subset.
 */
enum class SubsetOrder { CancellingSubsetLast, AllFusableLast };

enum class Partition {
  Greedy,    // first-fit in term order
  Coloring,  // by edge color of the coupling map, larger classes first
};

struct RouteOptions {
  SubsetOrder order = SubsetOrder::CancellingSubsetLast;
  Partition partition = Partition::Greedy;
};

/**
 * Routes `circuit` with the given strategy.
 *
 * Every two-qubit commuting set restarts the strategy from its first layer.
 * A set that is not exhausted when the strategy runs out raises
 * StrategyExhausted. Swaps after the last use of their qubits in a set are
 * dropped and only tracked in the mapping.
 */
RoutedCircuit route(
    const AbstractCircuit& circuit, const SwapStrategy& strategy, const QubitMapping& initial,
    const RouteOptions& options = {});
RoutedCircuit route(const AbstractCircuit& circuit, const SwapStrategy& strategy, const RouteOptions& options = {});

/**
 * Greedy router: runs every executable gate, otherwise inserts the swap that
 * most reduces the summed distance of the pending gates (ties go to the lower
 * edge index). When no swap helps, walks the closest pending pair together.
 */
RoutedCircuit route_baseline(
    const AbstractCircuit& circuit, const CouplingMap& map, const QubitMapping& initial);
RoutedCircuit route_baseline(const AbstractCircuit& circuit, const CouplingMap& map);

/// Throws MappingInvalid if a layer reuses a qubit or a CX leaves the map.
void check_layers(const RoutedCircuit& routed, const CouplingMap& map);

/// 2|E| (L + 1) - sum of swap layer sizes, for one segment.
std::size_t cnot_count_bound(const CouplingMap& map, const SegmentStats& segment);

struct TableEstimate {
  double swap_layers = 0.0;
  double cnot_layers = 0.0;
  double cnot_total = 0.0;
  double cnots_per_layer = 0.0;
  bool lower_bound = false;  // set for D < 1
};

/// Leading-order counts of one cost layer for a family; UnknownFamily for custom.
TableEstimate count_table_estimates(Family family, double n, double density);

std::string to_qasm(const RoutedCircuit& routed);
std::string to_layer_json(const RoutedCircuit& routed);
RoutedCircuit routed_from_layer_json(std::string_view text);

}  // namespace swaproute
