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
 * @file report.hpp
 * @brief Machine-readable summary of one routing run.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "swaproute/estimator.hpp"
#include "swaproute/router.hpp"

namespace swaproute {

struct RunReport {
  std::string problem_digest;
  std::string map_digest;
  std::string strategy_digest;
  std::string router;  // "strategy" or "baseline"
  std::size_t num_qubits = 0;
  std::size_t rounds = 0;
  std::size_t cnot_count = 0;
  std::size_t cnot_layer_count = 0;
  std::size_t swap_layers_used = 0;
  std::size_t swap_count = 0;
  std::size_t swaps_removed = 0;
  std::size_t rzz_absorbed_count = 0;
  std::optional<bool> verified;  // set when the oracle ran
  std::optional<double> oracle_distance;
  std::optional<CriterionResult> criterion;
  double transpile_seconds = 0.0;

  bool operator==(const RunReport&) const = default;
};

/// Copies the counters of `routed`; digests and timing are left to the caller.
RunReport make_report(const RoutedCircuit& routed);

std::string to_json(const RunReport& report);
RunReport report_from_json(std::string_view text);

}  // namespace swaproute
