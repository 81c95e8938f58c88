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
 * @file topology.hpp
 * @brief Device coupling maps, their edge colorings and the heavy-hex
 * unfolding onto a line with dangling qubits.
 */

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace swaproute {

using Qubit = std::uint32_t;

/** Undirected pair of qubits, stored with `u < v`. */
struct Edge {
  Qubit u = 0;
  Qubit v = 0;

  constexpr Edge() = default;
  constexpr Edge(Qubit a, Qubit b) : u(a < b ? a : b), v(a < b ? b : a) {}

  constexpr bool touches(Qubit q) const noexcept { return u == q || v == q; }
  constexpr bool shares_vertex(const Edge& other) const noexcept {
    return touches(other.u) || touches(other.v);
  }
  constexpr auto operator<=>(const Edge&) const = default;
};

std::ostream& operator<<(std::ostream& os, const Edge& e);

enum class Family { Line, Grid2D, Grid3D, HeavyHex, Custom };

std::string_view to_string(Family family);
/** Accepts "line", "grid2d", "grid3d", "heavy-hex" and "custom". */
Family family_from_string(std::string_view name);

/**
 * @brief Undirected device graph.
 *
 * Immutable once built. Edges keep their construction order, which is the
 * order used for edge indices and tie-breaking everywhere else.
 */
class CouplingMap {
 public:
  static constexpr std::string_view kUnrolledHeavyHex = "unrolled-heavy-hex";

  CouplingMap(
      std::size_t num_qubits, std::vector<Edge> edges,
      Family family = Family::Custom, std::vector<std::size_t> dims = {},
      std::string label = {});

  static CouplingMap line(std::size_t n);
  static CouplingMap grid2d(std::size_t x, std::size_t y);
  static CouplingMap grid3d(std::size_t x, std::size_t y, std::size_t z);
  /// `rows` x `cols` hexagons, n = 5ij + 4(i+j) - 1.
  static CouplingMap heavy_hex(std::size_t rows, std::size_t cols);
  /// A line of `line_length` qubits (a multiple of 4) with one dangling
  /// qubit attached to every line position p with p % 4 == 1.
  static CouplingMap unrolled_heavy_hex(std::size_t line_length);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  Family family() const noexcept { return family_; }
  std::span<const std::size_t> dims() const noexcept { return dims_; }
  const std::string& label() const noexcept { return label_; }

  bool has_edge(Qubit a, Qubit b) const;
  std::optional<std::size_t> edge_index(Qubit a, Qubit b) const;
  std::span<const Qubit> neighbors(Qubit q) const;
  std::size_t max_degree() const;

  const std::optional<std::vector<std::size_t>>& coloring() const noexcept {
    return coloring_;
  }
  /// Copy of this map carrying `colors` (one per edge); throws InvalidInput
  /// unless the coloring is proper.
  CouplingMap with_coloring(std::vector<std::size_t> colors) const;

  /// BFS hop counts from `source`; unreachable qubits get SIZE_MAX.
  std::vector<std::size_t> distances_from(Qubit source) const;
  /// All-pairs hop counts, row-major n x n.
  std::vector<std::size_t> all_distances() const;

 private:
  static std::uint64_t key(Qubit a, Qubit b) noexcept {
    Edge e(a, b);
    return (std::uint64_t{e.u} << 32) | e.v;
  }

  std::size_t num_qubits_;
  std::vector<Edge> edges_;
  Family family_;
  std::vector<std::size_t> dims_;
  std::string label_;
  std::vector<std::vector<Qubit>> adjacency_;
  std::unordered_map<std::uint64_t, std::size_t> edge_lookup_;
  std::optional<std::vector<std::size_t>> coloring_;
};

CouplingMap build_coupling_map(Family family, std::span<const std::size_t> dims);

/**
 * Proper edge coloring, one color index per edge of `map.edges()`.
 * Lines use 2 colors by edge parity, grids use 2 per axis so that every grid
 * swap layer is one color class, heavy-hex uses 3. Anything else falls back
 * to a generic coloring with at most max_degree + 1 colors.
 */
std::vector<std::size_t> edge_coloring(const CouplingMap& map);

bool is_proper_coloring(const CouplingMap& map, std::span<const std::size_t> colors);

enum class NodeGroup : std::uint8_t {
  A, B, V0, V1, V2, V3, V4, V5, V6, V7, TailShort, TailLong
};

std::string_view to_string(NodeGroup group);

/**
 * Heavy-hex device laid out as a line with dangling qubits.
 *
 * Dangling qubits hang off line positions p with p % 4 == 1. Those at
 * p % 8 == 1 form group A, the others group B. The tails are the line
 * segments before the first and after the last anchor position.
 */
struct UnfoldedHeavyHex {
  CouplingMap map;
  std::vector<Qubit> line_order;
  std::map<std::size_t, Qubit> dangling;  // line position -> off-line qubit
  std::vector<Qubit> tail_short;
  std::vector<Qubit> tail_long;
  std::vector<Edge> removed_edges;
  std::vector<NodeGroup> groups;  // indexed by physical qubit
  /// Length of the line extended by an off-line neighbour of its last node.
  std::size_t extended_length = 0;
};

/// Accepts HeavyHex maps and the unrolled-heavy-hex custom map; throws
/// UnfoldFailed otherwise.
UnfoldedHeavyHex unfold_heavy_hex(const CouplingMap& map);

// Serialization.
std::string to_json(const CouplingMap& map);
CouplingMap coupling_map_from_json(std::string_view text);
std::string to_edge_list(const CouplingMap& map);
CouplingMap coupling_map_from_edge_list(std::string_view text);
/// Dispatches on the first non-blank character ('{' means JSON).
CouplingMap read_coupling_map(const std::string& path);

}  // namespace swaproute
