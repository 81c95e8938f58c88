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

#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "support.hpp"
#include "swaproute/error.hpp"
#include "swaproute/topology.hpp"

using namespace swaproute;
using namespace swaproute::testing;

namespace {

bool throws_code(ErrorCode code, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

// Connected components by union-find, used to check that maps are connected.
std::size_t components(const CouplingMap& m) {
  std::vector<std::size_t> parent(m.num_qubits());
  for (std::size_t q = 0; q < parent.size(); ++q) parent[q] = q;
  auto find = [&](std::size_t q) {
    while (parent[q] != q) q = parent[q] = parent[parent[q]];
    return q;
  };
  for (const Edge& e : m.edges()) parent[find(e.u)] = find(e.v);
  std::set<std::size_t> roots;
  for (std::size_t q = 0; q < parent.size(); ++q) roots.insert(find(q));
  return roots.size();
}

}  // namespace

TEST_CASE("line map is a path", "[topology]") {
  const auto m = CouplingMap::line(5);
  REQUIRE(m.num_qubits() == 5);
  REQUIRE(m.edges().size() == 4);
  for (Qubit q = 0; q + 1 < 5; ++q) CHECK(m.has_edge(q, q + 1));
  CHECK_FALSE(m.has_edge(0, 2));
  CHECK(m.max_degree() == 2);
}

TEST_CASE("grid maps have nearest-neighbour edges", "[topology]") {
  const auto g = CouplingMap::grid2d(4, 4);
  CHECK(g.num_qubits() == 16);
  CHECK(g.edges().size() == 24);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(0, 4));
  CHECK_FALSE(g.has_edge(3, 4));

  const auto c = CouplingMap::grid3d(3, 3, 3);
  CHECK(c.num_qubits() == 27);
  CHECK(c.edges().size() == 3 * 3 * 3 * 2);
  CHECK(c.has_edge(0, 9));
  CHECK(c.max_degree() == 6);
}

TEST_CASE("heavy-hex qubit and edge counts", "[topology]") {
  for (std::size_t i = 1; i <= 4; ++i) {
    for (std::size_t j = 1; j <= 4; ++j) {
      const auto m = CouplingMap::heavy_hex(i, j);
      INFO(i << "x" << j);
      CHECK(m.num_qubits() == 5 * i * j + 4 * (i + j) - 1);
      CHECK(m.max_degree() <= 3);
      CHECK(components(m) == 1);
      // Hexagon lattice with 2ij + 2i + 2j vertices; every lattice edge
      // carries one extra qubit and becomes two device edges.
      CHECK(m.edges().size() == 2 * (m.num_qubits() - (2 * i * j + 2 * i + 2 * j)));
      std::size_t degree_sum = 0;
      for (Qubit q = 0; q < m.num_qubits(); ++q) degree_sum += m.neighbors(q).size();
      CHECK(degree_sum == 2 * m.edges().size());
    }
  }
  CHECK(CouplingMap::heavy_hex(3, 3).num_qubits() == 68);
}

TEST_CASE("build_coupling_map validates dimensions", "[topology]") {
  const std::size_t zero[] = {0};
  const std::size_t two[] = {2, 3};
  CHECK(throws_code(ErrorCode::InvalidDims, [&] { build_coupling_map(Family::Line, zero); }));
  CHECK(throws_code(ErrorCode::InvalidDims, [&] { build_coupling_map(Family::Line, two); }));
  CHECK(build_coupling_map(Family::Grid2D, two).num_qubits() == 6);
}

TEST_CASE("constructor rejects malformed edge sets", "[topology]") {
  CHECK(throws_code(ErrorCode::InvalidInput, [] { CouplingMap(3, {Edge(1, 1)}); }));
  CHECK(throws_code(ErrorCode::InvalidInput, [] { CouplingMap(3, {Edge(0, 1), Edge(1, 0)}); }));
  CHECK(throws_code(ErrorCode::OutOfRange, [] { CouplingMap(3, {Edge(0, 3)}); }));
}

TEST_CASE("edge colorings are proper with the documented palette", "[topology]") {
  auto palette = [](const std::vector<std::size_t>& c) { return std::set<std::size_t>(c.begin(), c.end()).size(); };
  auto classes_are_matchings = [](const CouplingMap& m, const std::vector<std::size_t>& c) {
    std::vector<std::vector<Edge>> by_color(*std::max_element(c.begin(), c.end()) + 1);
    for (std::size_t k = 0; k < c.size(); ++k) by_color[c[k]].push_back(m.edges()[k]);
    return std::all_of(by_color.begin(), by_color.end(), is_matching);
  };

  const auto line = CouplingMap::line(6);
  const auto lc = edge_coloring(line);
  CHECK(palette(lc) == 2);
  for (std::size_t k = 0; k < lc.size(); ++k) CHECK(lc[k] == line.edges()[k].u % 2);

  const auto grid = CouplingMap::grid2d(4, 4);
  const auto gc = edge_coloring(grid);
  CHECK(palette(gc) == 4);
  CHECK(classes_are_matchings(grid, gc));

  const auto cube = CouplingMap::grid3d(3, 3, 3);
  CHECK(palette(edge_coloring(cube)) == 6);
  CHECK(classes_are_matchings(cube, edge_coloring(cube)));

  const auto hh = CouplingMap::heavy_hex(3, 3);
  const auto hc = edge_coloring(hh);
  CHECK(palette(hc) == 3);
  CHECK(classes_are_matchings(hh, hc));
  CHECK(is_proper_coloring(hh, hc));

  // Petersen graph: cubic, class two, so the fallback needs four colors.
  const auto petersen = CouplingMap(10, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(3, 4), Edge(0, 4), Edge(0, 5),
                                         Edge(1, 6), Edge(2, 7), Edge(3, 8), Edge(4, 9), Edge(5, 7), Edge(7, 9),
                                         Edge(6, 9), Edge(6, 8), Edge(5, 8)});
  const auto pc = edge_coloring(petersen);
  CHECK(is_proper_coloring(petersen, pc));
  CHECK(palette(pc) <= petersen.max_degree() + 1);
}

TEST_CASE("with_coloring rejects improper colorings", "[topology]") {
  const auto line = CouplingMap::line(4);
  CHECK(throws_code(ErrorCode::InvalidInput, [&] { (void)line.with_coloring({0, 0, 1}); }));
  CHECK(line.with_coloring({0, 1, 0}).coloring().has_value());
}

TEST_CASE("heavy-hex unfolding", "[topology]") {
  const auto m = CouplingMap::heavy_hex(3, 3);
  const auto u = unfold_heavy_hex(m);
  CHECK(u.line_order.size() == 60);
  CHECK(u.tail_short.size() == 5);
  CHECK(u.tail_long.size() == 18);

  SECTION("line and dangling qubits partition the device") {
    std::set<Qubit> seen(u.line_order.begin(), u.line_order.end());
    for (const auto& [pos, q] : u.dangling) {
      CHECK(pos % 4 == 1);
      CHECK(seen.insert(q).second);
    }
    CHECK(seen.size() == m.num_qubits());
    CHECK(u.line_order.size() + u.dangling.size() == m.num_qubits());
  }
  SECTION("line is a simple path avoiding removed edges") {
    std::set<Edge> removed(u.removed_edges.begin(), u.removed_edges.end());
    for (std::size_t p = 0; p + 1 < u.line_order.size(); ++p) {
      CHECK(m.has_edge(u.line_order[p], u.line_order[p + 1]));
      CHECK(removed.count(Edge(u.line_order[p], u.line_order[p + 1])) == 0);
    }
  }
  SECTION("each dangling qubit keeps exactly one edge into the line") {
    std::set<Edge> removed(u.removed_edges.begin(), u.removed_edges.end());
    for (const auto& [pos, q] : u.dangling) {
      std::size_t kept = 0;
      for (Qubit nb : m.neighbors(q)) {
        if (!removed.count(Edge(q, nb))) ++kept;
      }
      CHECK(kept == 1);
      CHECK(m.has_edge(q, u.line_order[pos]));
    }
  }
  SECTION("groups A and B alternate every eight line nodes") {
    for (const auto& [pos, q] : u.dangling) {
      CHECK(u.groups[q] == (pos % 8 == 1 ? NodeGroup::A : NodeGroup::B));
    }
  }
  SECTION("tails are the line ends outside the anchors") {
    CHECK(std::equal(u.tail_short.begin(), u.tail_short.end(), u.line_order.begin()));
    CHECK(std::equal(u.tail_long.rbegin(), u.tail_long.rend(), u.line_order.rbegin()));
    CHECK(u.tail_long.size() % 4 == 2);
  }
}

TEST_CASE("unfolding sizes across heavy-hex shapes", "[topology]") {
  CHECK(unfold_heavy_hex(CouplingMap::heavy_hex(1, 1)).line_order.size() == 12);
  for (std::size_t i = 1; i <= 4; ++i) {
    for (std::size_t j = 1; j <= 4; ++j) {
      const auto u = unfold_heavy_hex(CouplingMap::heavy_hex(i, j));
      INFO(i << "x" << j);
      CHECK(u.line_order.size() % 4 == 0);
      CHECK(u.line_order.size() + 3 >= 4 * (i * j + i + j) + 1);
    }
  }
  CHECK_THROWS_AS(unfold_heavy_hex(CouplingMap::line(8)), Error);
}

TEST_CASE("unrolled heavy-hex carries a dangling qubit every four line nodes", "[topology]") {
  const auto m = CouplingMap::unrolled_heavy_hex(16);
  CHECK(m.num_qubits() == 20);
  CHECK(m.label() == CouplingMap::kUnrolledHeavyHex);
  const auto u = unfold_heavy_hex(m);
  CHECK(u.line_order.size() == 16);
  CHECK(u.dangling.size() == 4);
}

TEST_CASE("distances are BFS hop counts", "[topology]") {
  const auto g = CouplingMap::grid2d(3, 3);
  const auto d = g.all_distances();
  CHECK(d[0 * 9 + 8] == 4);
  CHECK(d[4 * 9 + 0] == 2);
  const CouplingMap split(4, {Edge(0, 1), Edge(2, 3)});
  CHECK(split.distances_from(0)[3] == std::numeric_limits<std::size_t>::max());
}

TEST_CASE("coupling map serialization round-trips", "[topology]") {
  for (const auto& m : {CouplingMap::line(7), CouplingMap::grid2d(3, 4), CouplingMap::heavy_hex(2, 2),
                        CouplingMap(4, {Edge(0, 3), Edge(1, 2)})}) {
    const auto back = coupling_map_from_json(to_json(m));
    CHECK(back.num_qubits() == m.num_qubits());
    CHECK(back.family() == m.family());
    CHECK(std::equal(back.edges().begin(), back.edges().end(), m.edges().begin(), m.edges().end()));
    const auto text = coupling_map_from_edge_list(to_edge_list(m));
    CHECK(text.edges().size() == m.edges().size());
  }
  CHECK_THROWS_AS(coupling_map_from_json(R"({"n":3,"family":"line","dims":[3],"edges":[[0,2]]})"), Error);
  CHECK_THROWS_AS(coupling_map_from_json("{not json"), Error);
  const auto nairobi = read_coupling_map(fixture("nairobi.json"));
  CHECK(nairobi.num_qubits() == 7);
  CHECK(nairobi.edges().size() == 6);
}
