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

#include "swaproute/problem.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "swaproute/error.hpp"
#include "swaproute/io.hpp"

namespace swaproute {

ProblemGraph::ProblemGraph(std::size_t num_vars, std::vector<Term> terms)
    : num_vars_(num_vars), terms_(std::move(terms)) {
  if (num_vars_ == 0) throw Error(ErrorCode::InvalidInput, "problem needs at least one variable");
  std::set<std::pair<Qubit, Qubit>> seen;
  for (Term& t : terms_) {
    if (t.i == t.j) throw Error(ErrorCode::InvalidInput, "term on a single variable");
    if (t.i > t.j) std::swap(t.i, t.j);
    if (t.j >= num_vars_) throw Error(ErrorCode::OutOfRange, "term index " + std::to_string(t.j));
    if (!std::isfinite(t.weight)) throw Error(ErrorCode::InvalidInput, "non-finite weight");
    if (!seen.emplace(t.i, t.j).second) {
      throw Error(
          ErrorCode::InvalidInput,
          "duplicate term " + std::to_string(t.i) + "-" + std::to_string(t.j));
    }
  }
}

double ProblemGraph::density() const noexcept {
  if (num_vars_ < 2) return 0.0;
  const double pairs = 0.5 * static_cast<double>(num_vars_) * static_cast<double>(num_vars_ - 1);
  return static_cast<double>(terms_.size()) / pairs;
}

double ProblemGraph::total_weight() const noexcept {
  double s = 0.0;
  for (const Term& t : terms_) s += t.weight;
  return s;
}

ProblemGraph random_gnm(std::size_t n, double density, std::uint64_t seed, WeightMode weights) {
  if (n < 2) throw Error(ErrorCode::InvalidInput, "random graph needs n >= 2");
  if (!(density > 0.0 && density <= 1.0)) {
    throw Error(ErrorCode::InvalidDensity, "density must lie in (0, 1]");
  }
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const auto m = static_cast<std::uint64_t>(
      std::min<double>(static_cast<double>(pairs), std::ceil(density * static_cast<double>(pairs) - 1e-9)));

  std::mt19937_64 rng(seed);
  // Floyd's sampling of m distinct pair indices.
  std::unordered_set<std::uint64_t> picked;
  picked.reserve(m * 2);
  for (std::uint64_t j = pairs - m; j < pairs; ++j) {
    std::uniform_int_distribution<std::uint64_t> pick(0, j);
    const std::uint64_t t = pick(rng);
    if (!picked.insert(t).second) picked.insert(j);
  }
  std::vector<std::uint64_t> indices(picked.begin(), picked.end());
  std::sort(indices.begin(), indices.end());

  std::vector<Term> terms;
  terms.reserve(indices.size());
  std::uint64_t row_start = 0;
  Qubit i = 0;
  std::bernoulli_distribution coin(0.5);
  for (std::uint64_t k : indices) {
    while (k >= row_start + (n - 1 - i)) {
      row_start += n - 1 - i;
      ++i;
    }
    const auto j = static_cast<Qubit>(i + 1 + (k - row_start));
    const double w = weights == WeightMode::Unit ? 1.0 : (coin(rng) ? 1.0 : -1.0);
    terms.push_back({i, j, w});
  }
  return ProblemGraph(n, std::move(terms));
}

ProblemGraph complete_graph(std::size_t n, double weight) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      terms.push_back({static_cast<Qubit>(i), static_cast<Qubit>(j), weight});
  return ProblemGraph(n, std::move(terms));
}

CutValue maxcut_energy(const ProblemGraph& graph, std::span<const std::uint8_t> assignment) {
  if (assignment.size() != graph.num_vars()) {
    throw Error(ErrorCode::LengthMismatch, "assignment length differs from variable count");
  }
  CutValue out;
  for (const Term& t : graph.terms()) {
    const int zi = 1 - 2 * static_cast<int>(assignment[t.i] & 1U);
    const int zj = 1 - 2 * static_cast<int>(assignment[t.j] & 1U);
    out.cut += 0.5 * t.weight * static_cast<double>(1 - zi * zj);
  }
  out.ising_energy = -2.0 * out.cut + graph.total_weight();
  return out;
}

CutValue maxcut_energy(const ProblemGraph& graph, std::string_view bits) {
  std::vector<std::uint8_t> x;
  x.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw Error(ErrorCode::InvalidInput, "assignment must be a 0/1 string");
    x.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return maxcut_energy(graph, x);
}

AbstractCircuit build_qaoa_circuit(
    const ProblemGraph& graph, std::span<const double> gammas, std::span<const double> betas) {
  if (gammas.size() != betas.size()) {
    throw Error(ErrorCode::LengthMismatch, "gammas and betas must have equal length");
  }
  if (gammas.empty()) throw Error(ErrorCode::LengthMismatch, "QAOA needs at least one round");
  AbstractCircuit c;
  c.num_qubits = graph.num_vars();
  CommutingSet init;
  for (std::size_t q = 0; q < c.num_qubits; ++q) init.gates.push_back(Gate::h(static_cast<Qubit>(q)));
  c.sets.push_back(std::move(init));
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    CommutingSet cost;
    for (const Term& t : graph.terms()) cost.gates.push_back(Gate::rzz(t.i, t.j, 2.0 * gammas[k] * t.weight));
    if (!cost.gates.empty()) c.sets.push_back(std::move(cost));
    CommutingSet mixer;
    for (std::size_t q = 0; q < c.num_qubits; ++q) {
      mixer.gates.push_back(Gate::rx(static_cast<Qubit>(q), 2.0 * betas[k]));
    }
    c.sets.push_back(std::move(mixer));
  }
  return c;
}

AbstractCircuit cost_layer_circuit(const ProblemGraph& graph, double gamma) {
  AbstractCircuit c;
  c.num_qubits = graph.num_vars();
  CommutingSet cost;
  for (const Term& t : graph.terms()) cost.gates.push_back(Gate::rzz(t.i, t.j, 2.0 * gamma * t.weight));
  if (!cost.gates.empty()) c.sets.push_back(std::move(cost));
  return c;
}

std::string to_json(const ProblemGraph& graph) {
  nlohmann::json j;
  j["n"] = graph.num_vars();
  auto terms = nlohmann::json::array();
  for (const Term& t : graph.terms()) terms.push_back({t.i, t.j, t.weight});
  j["terms"] = std::move(terms);
  return j.dump();
}

ProblemGraph problem_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    std::vector<Term> terms;
    for (const auto& t : j.at("terms")) {
      if (!t.is_array() || t.size() != 3) throw Error(ErrorCode::InvalidInput, "term must be [i, j, w]");
      terms.push_back({t[0].get<Qubit>(), t[1].get<Qubit>(), t[2].get<double>()});
    }
    return ProblemGraph(j.at("n").get<std::size_t>(), std::move(terms));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::InvalidInput, std::string("problem JSON: ") + ex.what());
  }
}

std::string to_text(const ProblemGraph& graph) {
  std::ostringstream os;
  os.precision(17);
  for (const Term& t : graph.terms()) os << t.i << ' ' << t.j << ' ' << t.weight << '\n';
  return os.str();
}

ProblemGraph problem_from_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::vector<Term> terms;
  std::size_t n = 0;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long a = 0;
    if (!(ls >> a)) continue;
    long long b = 0;
    double w = 0.0;
    std::string rest;
    if (!(ls >> b >> w) || a < 0 || b < 0 || (ls >> rest)) {
      throw Error(ErrorCode::InvalidInput, "problem line " + std::to_string(lineno) + ": expected 'i j w'");
    }
    terms.push_back({static_cast<Qubit>(a), static_cast<Qubit>(b), w});
    n = std::max<std::size_t>(n, static_cast<std::size_t>(std::max(a, b)) + 1);
  }
  if (terms.empty()) throw Error(ErrorCode::InvalidInput, "problem text has no terms");
  return ProblemGraph(n, std::move(terms));
}

ProblemGraph read_problem(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return problem_from_json(text);
  return problem_from_text(text);
}

}  // namespace swaproute
