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

#include "swaproute/report.hpp"

#include "json.hpp"
#include "swaproute/error.hpp"

namespace swaproute {

RunReport make_report(const RoutedCircuit& routed) {
  RunReport r;
  r.num_qubits = routed.num_qubits;
  r.cnot_count = routed.cnot_count;
  r.cnot_layer_count = routed.cnot_layer_count;
  r.swap_layers_used = routed.swap_layers_used();
  r.swap_count = routed.swap_count;
  r.swaps_removed = routed.swaps_removed;
  r.rzz_absorbed_count = routed.rzz_absorbed_count;
  return r;
}

std::string to_json(const RunReport& report) {
  nlohmann::json j;
  j["digests"] = {
      {"problem", report.problem_digest}, {"map", report.map_digest}, {"strategy", report.strategy_digest}};
  j["router"] = report.router;
  j["num_qubits"] = report.num_qubits;
  j["rounds"] = report.rounds;
  j["cnot_count"] = report.cnot_count;
  j["cnot_layer_count"] = report.cnot_layer_count;
  j["swap_layers_used"] = report.swap_layers_used;
  j["swap_count"] = report.swap_count;
  j["swaps_removed"] = report.swaps_removed;
  j["rzz_absorbed_count"] = report.rzz_absorbed_count;
  j["verified"] = report.verified ? nlohmann::json(*report.verified) : nlohmann::json(nullptr);
  if (report.oracle_distance) j["oracle_distance"] = *report.oracle_distance;
  if (report.criterion) {
    const CriterionResult& c = *report.criterion;
    j["criterion"] = {{"lhs", c.lhs}, {"rhs", c.rhs}, {"satisfied", c.satisfied},
                      {"epsilon_star", c.epsilon_star}, {"whole_layers", c.whole_layers}};
  }
  j["transpile_seconds"] = report.transpile_seconds;
  return j.dump(2);
}

RunReport report_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    RunReport r;
    const auto& d = j.at("digests");
    r.problem_digest = d.at("problem").get<std::string>();
    r.map_digest = d.at("map").get<std::string>();
    r.strategy_digest = d.at("strategy").get<std::string>();
    r.router = j.at("router").get<std::string>();
    r.num_qubits = j.at("num_qubits").get<std::size_t>();
    r.rounds = j.at("rounds").get<std::size_t>();
    r.cnot_count = j.at("cnot_count").get<std::size_t>();
    r.cnot_layer_count = j.at("cnot_layer_count").get<std::size_t>();
    r.swap_layers_used = j.at("swap_layers_used").get<std::size_t>();
    r.swap_count = j.at("swap_count").get<std::size_t>();
    r.swaps_removed = j.at("swaps_removed").get<std::size_t>();
    r.rzz_absorbed_count = j.at("rzz_absorbed_count").get<std::size_t>();
    if (!j.at("verified").is_null()) r.verified = j.at("verified").get<bool>();
    if (j.contains("oracle_distance")) r.oracle_distance = j.at("oracle_distance").get<double>();
    if (j.contains("criterion")) {
      const auto& c = j.at("criterion");
      r.criterion = CriterionResult{c.at("lhs").get<double>(), c.at("rhs").get<double>(),
                                    c.at("satisfied").get<bool>(), c.at("epsilon_star").get<double>(),
                                    c.at("whole_layers").get<double>()};
    }
    r.transpile_seconds = j.at("transpile_seconds").get<double>();
    return r;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::InvalidInput, std::string("run report: ") + ex.what());
  }
}

}  // namespace swaproute
