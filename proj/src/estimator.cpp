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

#include "swaproute/estimator.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "swaproute/error.hpp"
#include "swaproute/router.hpp"

namespace swaproute {

void HardwareModel::validate() const {
  for (double p : {f_cx_error, f_1q_error}) {
    if (!(p >= 0.0 && p < 1.0)) throw Error(ErrorCode::InvalidInput, "error probability outside [0, 1)");
  }
  for (double t : {tau_cx, tau_1q, tau_delay, tau_init, tau_meas_reset}) {
    if (!(t >= 0.0)) throw Error(ErrorCode::InvalidInput, "negative duration");
  }
}

double max_depth_bound(double epsilon, double f1, double p1, double f2, double p2) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorCode::InvalidInput, "epsilon must lie in (0, 1)");
  const double rate = f1 * p1 + f2 * p2;
  if (rate == 0.0) throw Error(ErrorCode::DivByZero, "zero effective error rate");
  return std::log(1.0 / epsilon) / (2.0 * rate);
}

double layer_depolarizing(double f_cx, double l_cx) { return 1.0 - std::pow(f_cx, l_cx); }

CriterionResult criterion_check(double cnot_layers, double l_cx, double f_cx, double epsilon) {
  CriterionResult r;
  r.lhs = cnot_layers;
  r.rhs = max_depth_bound(epsilon, 0.0, 0.0, 1.0, layer_depolarizing(f_cx, l_cx));
  r.satisfied = r.lhs <= r.rhs;
  // Equality of lhs with ln(1/eps) / (2 ln(1/F^l)), the form before 1 - x ~ -ln x.
  r.epsilon_star = std::pow(f_cx, 2.0 * l_cx * r.lhs);
  r.whole_layers = std::floor(r.rhs);
  return r;
}

CriterionResult criterion_check(
    double p, double n, double density, Family family, double f_cx, double epsilon) {
  const TableEstimate t = count_table_estimates(family, n, density);
  return criterion_check(p * t.cnot_layers, t.cnots_per_layer, f_cx, epsilon);
}

FidelityHeatmap fidelity_heatmap(
    double n, Family family, std::span<const double> densities, std::span<const double> infidelities,
    double p, std::span<const double> epsilons) {
  FidelityHeatmap out;
  out.densities.assign(densities.begin(), densities.end());
  out.infidelities.assign(infidelities.begin(), infidelities.end());
  for (double d : densities) {
    const TableEstimate t = count_table_estimates(family, n, d);
    auto& row = out.values.emplace_back();
    for (double e : infidelities) {
      row.push_back(2.0 * p * t.cnot_layers * layer_depolarizing(1.0 - e, t.cnots_per_layer));
    }
  }
  for (double eps : epsilons) out.contours.push_back(std::log(1.0 / eps) / p);
  return out;
}

std::string to_csv(const FidelityHeatmap& map) {
  std::ostringstream os;
  os.precision(10);
  os << "density";
  for (double e : map.infidelities) os << ',' << e;
  os << '\n';
  for (std::size_t r = 0; r < map.densities.size(); ++r) {
    os << map.densities[r];
    for (double v : map.values[r]) os << ',' << v;
    os << '\n';
  }
  return os.str();
}

double shot_time(double n, double density, Family family, const HardwareModel& hw, DepthPolicy policy) {
  if (n < 2.0) throw Error(ErrorCode::InvalidInput, "shot time needs n >= 2");
  hw.validate();
  double p = std::log2(n);
  if (policy == DepthPolicy::Log2Floor) p = std::floor(p);
  const double circ = p * count_table_estimates(family, n, density).cnot_layers * hw.tau_cx;
  return circ + hw.tau_delay + hw.tau_meas_reset;
}

double ShotsPolicy::shots_for(double n) const {
  return kind == Kind::Fixed ? shots : 1e4 * (n / 10.0) * (n / 10.0);
}

double ItersPolicy::iterations_for(double n) const {
  switch (kind) {
    case Kind::Log2:
      return 25.0 * std::log2(n);
    case Kind::Fixed:
      return iterations;
    case Kind::Single:
      return 1.0;
  }
  return 1.0;
}

namespace {

double parse_count(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || !(value > 0.0)) {
    throw Error(ErrorCode::InvalidPolicy, "bad count in " + std::string(what) + " policy");
  }
  return value;
}

}  // namespace

ShotsPolicy parse_shots_policy(std::string_view text) {
  if (text == "quadratic") return {ShotsPolicy::Kind::Quadratic, 0.0};
  if (text == "fixed") return {};
  if (text.starts_with("fixed:")) return {ShotsPolicy::Kind::Fixed, parse_count(text.substr(6), "shots")};
  throw Error(ErrorCode::InvalidPolicy, "unknown shots policy '" + std::string(text) + "'");
}

ItersPolicy parse_iters_policy(std::string_view text) {
  if (text == "log2") return {};
  if (text == "single") return {ItersPolicy::Kind::Single, 1.0};
  if (text.starts_with("fixed:")) return {ItersPolicy::Kind::Fixed, parse_count(text.substr(6), "iterations")};
  throw Error(ErrorCode::InvalidPolicy, "unknown iterations policy '" + std::string(text) + "'");
}

RuntimeBreakdown total_time(
    double n, double density, Family family, const HardwareModel& hw, const ShotsPolicy& shots,
    const ItersPolicy& iters, DepthPolicy depth, unsigned mitigation) {
  if (mitigation == 0) throw Error(ErrorCode::InvalidPolicy, "mitigation factor must be positive");
  RuntimeBreakdown r;
  r.tau_shot = shot_time(n, density, family, hw, depth);
  r.tau_circ = r.tau_shot - hw.tau_delay - hw.tau_meas_reset;
  r.n_shots = shots.shots_for(n) * mitigation;
  r.n_iter = iters.iterations_for(n);
  r.tau_total = r.n_iter * (r.n_shots * r.tau_shot + hw.tau_init);
  return r;
}

}  // namespace swaproute
