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

// Shared helpers for the unit and acceptance tests. Everything here is a
// test-side reimplementation, kept independent of the library internals.

#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "swaproute/strategy.hpp"
#include "swaproute/topology.hpp"

namespace swaproute::testing {

inline std::string fixture(const std::string& name) { return std::string(SWAPROUTE_FIXTURES) + "/" + name; }

/// Logical pairs that were adjacent at some point while applying the first
/// `layers` swap layers, simulated on plain arrays.
inline std::set<std::pair<Qubit, Qubit>> simulate_pairs(
    std::size_t n, const std::vector<Edge>& edges, const std::vector<std::vector<Edge>>& layers,
    std::size_t count) {
  std::vector<Qubit> at(n);  // physical -> logical
  for (std::size_t q = 0; q < n; ++q) at[q] = static_cast<Qubit>(q);
  std::set<std::pair<Qubit, Qubit>> seen;
  auto record = [&] {
    for (const Edge& e : edges) seen.insert(std::minmax(at[e.u], at[e.v]));
  };
  record();
  for (std::size_t k = 0; k < count; ++k) {
    for (const Edge& e : layers[k]) std::swap(at[e.u], at[e.v]);
    record();
  }
  return seen;
}

inline std::vector<std::vector<Edge>> layers_of(const SwapStrategy& s) {
  return {s.layers().begin(), s.layers().end()};
}

inline std::vector<Edge> edges_of(const CouplingMap& m) { return {m.edges().begin(), m.edges().end()}; }

inline bool is_matching(const std::vector<Edge>& layer) {
  std::set<Qubit> used;
  for (const Edge& e : layer) {
    if (!used.insert(e.u).second || !used.insert(e.v).second) return false;
  }
  return true;
}

}  // namespace swaproute::testing
