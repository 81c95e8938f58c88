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
 * @file estimator.hpp
 * @brief Entropic depth criterion and execution-time model for QAOA on
 * noisy hardware.
 */

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "swaproute/topology.hpp"

namespace swaproute {

/// Error rates are probabilities in [0, 1); durations are seconds.
struct HardwareModel {
  double f_cx_error = 0.0;  // 1 - CNOT fidelity
  double f_1q_error = 0.0;
  double tau_cx = 400e-9;
  double tau_1q = 0.0;
  double tau_delay = 0.0;  // after each measurement
  double tau_init = 0.0;   // per optimizer iteration
  double tau_meas_reset = 0.0;

  /// Throws InvalidInput on out-of-range fields.
  void validate() const;
};

struct RuntimeBreakdown {
  double tau_shot = 0.0;
  double tau_circ = 0.0;  // gate part of tau_shot
  double n_shots = 0.0;
  double n_iter = 0.0;
  double tau_total = 0.0;
};

/// ln(1/eps) / (2 (f1 p1 + f2 p2)); DivByZero when the denominator vanishes.
double max_depth_bound(double epsilon, double f1, double p1, double f2, double p2);

/// Depolarizing probability of a layer of `l_cx` CNOTs with fidelity `f_cx`.
double layer_depolarizing(double f_cx, double l_cx);

struct CriterionResult {
  double lhs = 0.0;           // p * L_cx
  double rhs = 0.0;           // depth bound
  bool satisfied = false;     // lhs <= rhs
  double epsilon_star = 0.0;  // eps at which lhs equals the bound
  double whole_layers = 0.0;  // floor(rhs)

  bool operator==(const CriterionResult&) const = default;
};

/// Criterion from measured depth and average CNOTs per layer.
CriterionResult criterion_check(double cnot_layers, double l_cx, double f_cx, double epsilon);

/// Criterion with L_cx and l_cx taken from the leading-order family counts.
CriterionResult criterion_check(
    double p, double n, double density, Family family, double f_cx, double epsilon);

/// 2 p L_cx (1 - F^{l_cx}) over a (density, infidelity) grid.
struct FidelityHeatmap {
  std::vector<double> densities;
  std::vector<double> infidelities;
  std::vector<std::vector<double>> values;  // [density][infidelity]
  std::vector<double> contours;             // ln(1/eps)/p per requested eps
};

FidelityHeatmap fidelity_heatmap(
    double n, Family family, std::span<const double> densities, std::span<const double> infidelities,
    double p = 1.0, std::span<const double> epsilons = {});

std::string to_csv(const FidelityHeatmap& map);

enum class DepthPolicy { Log2, Log2Floor };

/// p * L_cx * tau_cx + tau_delay + tau_meas_reset with p from `policy`.
double shot_time(double n, double density, Family family, const HardwareModel& hw,
                 DepthPolicy policy = DepthPolicy::Log2);

struct ShotsPolicy {
  enum class Kind { Fixed, Quadratic } kind = Kind::Fixed;
  double shots = 1e4;  // Fixed only

  /// 1e4 (n/10)^2 for Quadratic.
  double shots_for(double n) const;
};

struct ItersPolicy {
  enum class Kind { Log2, Fixed, Single } kind = Kind::Log2;
  double iterations = 1.0;  // Fixed only

  /// 25 log2(n) for Log2.
  double iterations_for(double n) const;
};

/// "fixed:<k>", "fixed" (10^4) or "quadratic"; InvalidPolicy otherwise.
ShotsPolicy parse_shots_policy(std::string_view text);
/// "log2", "single" or "fixed:<k>"; InvalidPolicy otherwise.
ItersPolicy parse_iters_policy(std::string_view text);

/// N_iter (mitigation * N_shots * tau_shot + tau_init).
RuntimeBreakdown total_time(
    double n, double density, Family family, const HardwareModel& hw, const ShotsPolicy& shots,
    const ItersPolicy& iters, DepthPolicy depth = DepthPolicy::Log2, unsigned mitigation = 1);

}  // namespace swaproute
