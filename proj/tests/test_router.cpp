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
#include <cmath>

#include "support.hpp"
#include "swaproute/error.hpp"
#include "swaproute/io.hpp"
#include "swaproute/oracle.hpp"
#include "swaproute/router.hpp"

using namespace swaproute;
using namespace swaproute::testing;

namespace {

AbstractCircuit qaoa(const ProblemGraph& g, std::size_t p) {
  std::vector<double> gammas, betas;
  for (std::size_t k = 0; k < p; ++k) {
    gammas.push_back(0.3 + 0.1 * static_cast<double>(k));
    betas.push_back(0.7 - 0.1 * static_cast<double>(k));
  }
  return build_qaoa_circuit(g, gammas, betas);
}

std::size_t count_kind(const RoutedCircuit& r, PrimitiveKind kind) {
  std::size_t total = 0;
  for (const auto& layer : r.layers) {
    total += static_cast<std::size_t>(
        std::count_if(layer.begin(), layer.end(), [&](const Primitive& p) { return p.kind == kind; }));
  }
  return total;
}

}  // namespace

TEST_CASE("nairobi fixture routes with 24 CNOTs per round", "[router]") {
  const auto g = read_problem(fixture("g10.json"));
  const auto map = read_coupling_map(fixture("nairobi.json"));
  const auto strategy = strategy_from_json(map, read_file(fixture("nairobi.json")));
  for (std::size_t p = 1; p <= 4; ++p) {
    const auto circuit = qaoa(g, p);
    const auto routed = route(circuit, strategy);
    INFO("p=" << p);
    CHECK(routed.cnot_count == 24 * p);
    CHECK(verify_circuit(routed, circuit).equivalent);

    RouteOptions all_last;
    all_last.order = SubsetOrder::AllFusableLast;
    const auto greedy_fuse = route(circuit, strategy, all_last);
    CHECK(greedy_fuse.cnot_count == 22 * p);
    CHECK(verify_circuit(greedy_fuse, circuit).equivalent);
  }
}

TEST_CASE("K5 on a five-qubit line", "[router]") {
  const auto k5 = complete_graph(5);
  const auto strategy = line_strategy(5);
  const auto circuit = cost_layer_circuit(k5, 0.7);
  const auto routed = route(circuit, strategy);
  check_layers(routed, strategy.map());
  CHECK(verify_equivalence(routed, k5, 0.7));
  CHECK(routed.segments.size() == 1);
  CHECK(routed.swap_layers_used() == 3);
  const auto baseline = route_baseline(circuit, strategy.map());
  check_layers(baseline, strategy.map());
  CHECK(verify_equivalence(baseline, k5, 0.7));
}

TEST_CASE("idle swaps after the last use are removed", "[router]") {
  const ProblemGraph pair(6, {{0, 2, 1.0}});
  const auto routed = route(cost_layer_circuit(pair, 0.4), line_strategy(6));
  CHECK(verify_equivalence(routed, pair, 0.4));
  // The pair meets after all four layers on positions 4 and 5. Only the
  // backward cone of those positions survives: 3 + 2 + 2 + 1 of 10 swaps.
  CHECK(routed.swap_count == 8);
  CHECK(routed.swaps_removed == 2);
}

TEST_CASE("gate conservation and counter consistency", "[router]") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_gnm(12, 0.5, seed);
    const auto map = CouplingMap::grid2d(4, 4);
    const auto circuit = qaoa(g, 2);
    for (const RoutedCircuit& r : {route(circuit, default_strategy(map)), route_baseline(circuit, map)}) {
      CHECK(count_kind(r, PrimitiveKind::RZ) == 2 * g.terms().size());
      CHECK(count_kind(r, PrimitiveKind::CX) == r.cnot_count);
      CHECK(count_kind(r, PrimitiveKind::RX) == 2 * g.num_vars());
      std::size_t cx_layers = 0;
      for (const auto& layer : r.layers) {
        if (std::any_of(layer.begin(), layer.end(), [](const Primitive& p) { return p.two_qubit(); })) ++cx_layers;
      }
      CHECK(cx_layers == r.cnot_layer_count);
      std::size_t per_segment = 0;
      for (const auto& s : r.segments) per_segment += s.cnot_count;
      CHECK(per_segment == r.cnot_count);
      CHECK_NOTHROW(check_layers(r, map));
      CHECK_NOTHROW(QubitMapping(std::vector<Qubit>(r.final_mapping.logical_to_physical().begin(),
                                                    r.final_mapping.logical_to_physical().end())));
    }
  }
}

TEST_CASE("complete graphs respect the CNOT and depth bounds", "[router]") {
  auto check_family = [](const SwapStrategy& s, auto depth_bound) {
    const std::size_t n = s.map().num_qubits();
    const auto circuit = cost_layer_circuit(complete_graph(n), 0.2);
    RouteOptions by_color;
    by_color.partition = Partition::Coloring;
    for (const auto& r : {route(circuit, s), route(circuit, s, by_color)}) {
      REQUIRE(r.segments.size() == 1);
      INFO("n=" << n);
      CHECK(r.cnot_count <= cnot_count_bound(s.map(), r.segments[0]));
    }
    // The depth bound counts one gate subset per color class. First-fit
    // subsets can outnumber the classes, so only the color partition is held to it.
    const auto r = route(circuit, s, by_color);
    const double ls = static_cast<double>(r.segments[0].swap_layer_sizes.size());
    INFO("n=" << n << " L_S=" << ls);
    CHECK(static_cast<double>(r.cnot_layer_count) <= depth_bound(ls));
  };
  auto grid_depth = [](double eta) { return [eta](double ls) { return (4 * eta - 1) * (ls + 1) + 1; }; };
  for (std::size_t n : {4, 9, 20, 33}) check_family(line_strategy(n), grid_depth(1));
  for (std::size_t x : {3, 4, 6}) check_family(grid_strategy(CouplingMap::grid2d(x, x)), grid_depth(2));
  for (std::size_t x : {2, 3}) check_family(grid_strategy(CouplingMap::grid3d(x, x, x)), grid_depth(3));
  for (auto [i, j] : {std::pair{1, 2}, {2, 2}, {3, 3}}) {
    check_family(heavy_hex_strategy(unfold_heavy_hex(CouplingMap::heavy_hex(i, j))),
                 [](double ls) { return 9 * ls + 10; });
  }

  const auto line60 = route(cost_layer_circuit(complete_graph(60), 0.2), line_strategy(60));
  CHECK(line60.cnot_count == cnot_count_bound(CouplingMap::line(60), line60.segments[0]));
  const double ratio = static_cast<double>(line60.cnot_count) / (1.5 * 60 * 60);
  CHECK(ratio >= 0.9);
  CHECK(ratio <= 1.0);
}

TEST_CASE("router errors", "[router]") {
  const auto k6 = complete_graph(6);
  const SwapStrategy short_strategy(CouplingMap::line(6), {{Edge(0, 1), Edge(2, 3), Edge(4, 5)}});
  try {
    (void)route(cost_layer_circuit(k6, 0.1), short_strategy);
    FAIL("expected StrategyExhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StrategyExhausted);
  }
  CHECK_THROWS_AS(QubitMapping({0, 0, 1}), Error);
  CHECK_THROWS_AS(route(cost_layer_circuit(k6, 0.1), line_strategy(6), QubitMapping::identity(5)), Error);
  CHECK_THROWS_AS(route(cost_layer_circuit(complete_graph(7), 0.1), line_strategy(6)), Error);

  const CouplingMap split(4, {Edge(0, 1), Edge(2, 3)});
  const ProblemGraph across(4, {{0, 3, 1.0}});
  try {
    (void)route_baseline(cost_layer_circuit(across, 0.1), split);
    FAIL("expected NoProgress");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoProgress);
  }
}

TEST_CASE("baseline inserts no swaps when gates already fit", "[router]") {
  const auto map = CouplingMap::grid2d(3, 3);
  std::vector<Term> terms;
  for (const Edge& e : map.edges()) terms.push_back({e.u, e.v, 1.0});
  const ProblemGraph native(9, terms);
  const auto r = route_baseline(cost_layer_circuit(native, 0.5), map);
  CHECK(r.swap_count == 0);
  CHECK(r.cnot_count == 2 * terms.size());
}

TEST_CASE("a non-identity initial mapping is honoured", "[router]") {
  const auto g = random_gnm(6, 0.8, 2);
  const QubitMapping initial({3, 5, 0, 1, 4, 2});
  const auto circuit = qaoa(g, 1);
  const auto r = route(circuit, line_strategy(6), initial);
  CHECK(r.initial_mapping == initial);
  CHECK(verify_circuit(r, circuit).equivalent);
  const auto b = route_baseline(circuit, CouplingMap::line(6), initial);
  CHECK(verify_circuit(b, circuit).equivalent);
}

TEST_CASE("coloring partition and fusable ordering stay equivalent", "[router]") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto g = random_gnm(8, 0.7, seed);
    const auto circuit = qaoa(g, 1);
    const auto map = CouplingMap::grid2d(3, 3);
    for (auto order : {SubsetOrder::CancellingSubsetLast, SubsetOrder::AllFusableLast}) {
      for (auto partition : {Partition::Greedy, Partition::Coloring}) {
        const auto r = route(circuit, default_strategy(map), {order, partition});
        CHECK_NOTHROW(check_layers(r, map));
        CHECK(verify_circuit(r, circuit).equivalent);
      }
    }
  }
}

TEST_CASE("check_layers catches illegal layers", "[router]") {
  const auto map = CouplingMap::line(3);
  RoutedCircuit r;
  r.num_qubits = 3;
  r.initial_mapping = r.final_mapping = QubitMapping::identity(3);
  r.layers = {{{PrimitiveKind::CX, 0, 2, 0.0}}};
  CHECK_THROWS_AS(check_layers(r, map), Error);
  r.layers = {{{PrimitiveKind::CX, 0, 1, 0.0}, {PrimitiveKind::RZ, 1, 1, 0.3}}};
  CHECK_THROWS_AS(check_layers(r, map), Error);
  r.layers = {{{PrimitiveKind::CX, 0, 1, 0.0}, {PrimitiveKind::RZ, 2, 2, 0.3}}};
  CHECK_NOTHROW(check_layers(r, map));
}

TEST_CASE("table estimates", "[router]") {
  CHECK(count_table_estimates(Family::Line, 100, 1.0).cnot_total == Catch::Approx(1.5e4));
  CHECK(count_table_estimates(Family::HeavyHex, 485, 1.0).cnot_layers == Catch::Approx(4365));
  CHECK(count_table_estimates(Family::Grid3D, 64, 1.0).cnots_per_layer == Catch::Approx(22.0));
  CHECK(count_table_estimates(Family::Grid2D, 100, 1.0).cnot_total == Catch::Approx(1.75e4));
  CHECK(count_table_estimates(Family::Line, 100, 0.5).lower_bound);
  CHECK_FALSE(count_table_estimates(Family::Line, 100, 1.0).lower_bound);
  CHECK_THROWS_AS(count_table_estimates(Family::Custom, 10, 1.0), Error);
  CHECK_THROWS_AS(count_table_estimates(Family::Line, 10, 0.0), Error);
}

TEST_CASE("QASM and layer JSON output", "[router]") {
  const auto g = read_problem(fixture("g10.json"));
  const auto map = read_coupling_map(fixture("nairobi.json"));
  const auto r = route(qaoa(g, 1), strategy_from_json(map, read_file(fixture("nairobi.json"))));
  const std::string qasm = to_qasm(r);
  CHECK(qasm.rfind("OPENQASM 2.0;", 0) == 0);
  CHECK(qasm.find("qreg q[7];") != std::string::npos);
  std::size_t cx_lines = 0;
  for (std::size_t at = qasm.find("cx q["); at != std::string::npos; at = qasm.find("cx q[", at + 1)) ++cx_lines;
  CHECK(cx_lines == 24);

  const auto back = routed_from_layer_json(to_layer_json(r));
  CHECK(back.cnot_count == r.cnot_count);
  CHECK(back.cnot_layer_count == r.cnot_layer_count);
  CHECK(back.final_mapping == r.final_mapping);
  CHECK(back.layers.size() == r.layers.size());
  CHECK(circuit_unitary(back).distance_up_to_phase(circuit_unitary(r)) < 1e-12);
  CHECK_THROWS_AS(routed_from_layer_json(R"({"layers":[],"cnot_count":3,"final_mapping":[0]})"), Error);
}
