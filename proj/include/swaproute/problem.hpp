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
 * @file problem.hpp
 * @brief Weighted MaxCut interaction graphs and the pre-routing QAOA circuit.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "swaproute/topology.hpp"

namespace swaproute {

/// Quadratic term `weight * Z_i Z_j`, stored with `i < j`.
struct Term {
  Qubit i = 0;
  Qubit j = 0;
  double weight = 1.0;
};

/**
 * @brief Interaction graph of a MaxCut/Ising cost function.
 *
 * Terms keep their insertion order, which is the order the router examines
 * them in. Each unordered pair appears at most once.
 */
class ProblemGraph {
 public:
  ProblemGraph(std::size_t num_vars, std::vector<Term> terms);

  std::size_t num_vars() const noexcept { return num_vars_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  /// Term count over n(n-1)/2; zero for a single variable.
  double density() const noexcept;
  double total_weight() const noexcept;

 private:
  std::size_t num_vars_;
  std::vector<Term> terms_;
};

enum class WeightMode { PlusMinusOne, Unit };

/// ceil(D n(n-1)/2) distinct pairs drawn uniformly, sorted lexicographically.
ProblemGraph random_gnm(
    std::size_t n, double density, std::uint64_t seed,
    WeightMode weights = WeightMode::PlusMinusOne);

ProblemGraph complete_graph(std::size_t n, double weight = 1.0);

struct CutValue {
  double cut = 0.0;
  double ising_energy = 0.0;
};

/// `assignment[k]` is x_k in {0, 1}; z_k = 1 - 2 x_k.
CutValue maxcut_energy(const ProblemGraph& graph, std::span<const std::uint8_t> assignment);
/// Character k of `bits` is x_k.
CutValue maxcut_energy(const ProblemGraph& graph, std::string_view bits);

enum class GateKind { H, RZZ, RX };

/// RZZ(t) = exp(-i t ZZ / 2), RX(t) = exp(-i t X / 2).
struct Gate {
  GateKind kind = GateKind::H;
  Qubit q0 = 0;
  Qubit q1 = 0;
  double angle = 0.0;

  static Gate h(Qubit q) { return {GateKind::H, q, q, 0.0}; }
  static Gate rzz(Qubit a, Qubit b, double theta) { return {GateKind::RZZ, a, b, theta}; }
  static Gate rx(Qubit q, double theta) { return {GateKind::RX, q, q, theta}; }
};

struct CommutingSet {
  std::vector<Gate> gates;

  bool two_qubit() const noexcept {
    return !gates.empty() && gates.front().kind == GateKind::RZZ;
  }
};

struct AbstractCircuit {
  std::size_t num_qubits = 0;
  std::vector<CommutingSet> sets;
};

/**
 * Hadamards on every qubit, then per round k one set of RZZ(2 gamma_k w_ij)
 * over all terms followed by one set of RX(2 beta_k).
 */
AbstractCircuit build_qaoa_circuit(
    const ProblemGraph& graph, std::span<const double> gammas, std::span<const double> betas);

/// A circuit holding only exp(-i gamma H_C).
AbstractCircuit cost_layer_circuit(const ProblemGraph& graph, double gamma);

std::string to_json(const ProblemGraph& graph);
ProblemGraph problem_from_json(std::string_view text);
std::string to_text(const ProblemGraph& graph);
/// Lines "i j w"; the variable count is one past the largest index.
ProblemGraph problem_from_text(std::string_view text);
ProblemGraph read_problem(const std::string& path);

}  // namespace swaproute
