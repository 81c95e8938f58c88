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

#include "swaproute/oracle.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "swaproute/error.hpp"

namespace swaproute {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_size(std::size_t n) {
  if (n > DenseOperator::kMaxQubits) {
    throw Error(ErrorCode::TooLarge, std::to_string(n) + " qubits exceed the dense limit of " +
                                         std::to_string(DenseOperator::kMaxQubits));
  }
}

/**
 * Operator built gate by gate. CX, RZ, RZZ and qubit permutations only move
 * and rephase basis states, so runs of them are kept as a generalized
 * permutation in O(2^n) per gate. The dense matrix is created by the first
 * H or RX and each run is folded into it with one pass.
 */
class OperatorBuilder {
 public:
  explicit OperatorBuilder(std::size_t num_qubits)
      : num_qubits_(num_qubits), dim_((check_size(num_qubits), std::size_t{1} << num_qubits)) {
    reset();
  }

  void h(Qubit q) {
    check(q);
    densify();
    dense_->apply_h(q);
  }
  void rx(Qubit q, double theta) {
    check(q);
    densify();
    dense_->apply_rx(q, theta);
  }
  void rz(Qubit q, double theta) {
    check(q);
    const Complex lo = std::exp(-kI * (theta / 2.0));
    const Complex hi = std::exp(kI * (theta / 2.0));
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t c = 0; c < dim_; ++c) phases_[c] *= (rows_[c] & bit) ? hi : lo;
  }
  void rzz(Qubit a, Qubit b, double theta) {
    check(a);
    check(b);
    const Complex same = std::exp(-kI * (theta / 2.0));
    const Complex diff = std::exp(kI * (theta / 2.0));
    for (std::size_t c = 0; c < dim_; ++c) {
      phases_[c] *= (((rows_[c] >> a) ^ (rows_[c] >> b)) & 1U) ? diff : same;
    }
  }
  void cx(Qubit control, Qubit target) {
    check(control);
    check(target);
    if (control == target) throw Error(ErrorCode::InvalidInput, "cx on a single qubit");
    const std::size_t cb = std::size_t{1} << control;
    const std::size_t tb = std::size_t{1} << target;
    for (std::size_t& r : rows_) {
      if (r & cb) r ^= tb;
    }
  }
  void permute(std::span<const Qubit> target) {
    if (target.size() != num_qubits_) throw Error(ErrorCode::LengthMismatch, "permutation length differs from qubits");
    for (std::size_t& r : rows_) {
      std::size_t moved = 0;
      for (std::size_t k = 0; k < num_qubits_; ++k) {
        if ((r >> k) & 1U) moved |= std::size_t{1} << target[k];
      }
      r = moved;
    }
  }

  DenseOperator take() {
    densify();
    return std::move(*dense_);
  }

  friend double distance_up_to_phase(OperatorBuilder& a, OperatorBuilder& b) {
    if (a.dim_ != b.dim_) throw Error(ErrorCode::LengthMismatch, "operators differ in dimension");
    if (a.dense_ || b.dense_) return a.take().distance_up_to_phase(b.take());
    // Both are generalized permutations: columns either share a row or are orthogonal.
    Complex overlap = 0.0;
    for (std::size_t c = 0; c < a.dim_; ++c) {
      if (a.rows_[c] == b.rows_[c]) overlap += std::conj(b.phases_[c]) * a.phases_[c];
    }
    const double mag = std::abs(overlap);
    const Complex phase = mag > 0.0 ? overlap / mag : Complex{1.0};
    double sum = 0.0;
    for (std::size_t c = 0; c < a.dim_; ++c) {
      sum += a.rows_[c] == b.rows_[c] ? std::norm(a.phases_[c] - phase * b.phases_[c])
                                      : std::norm(a.phases_[c]) + std::norm(b.phases_[c]);
    }
    return std::sqrt(sum);
  }

 private:
  void check(Qubit q) const {
    if (q >= num_qubits_) throw Error(ErrorCode::OutOfRange, "qubit " + std::to_string(q) + " outside the register");
  }
  void reset() {
    rows_.resize(dim_);
    for (std::size_t c = 0; c < dim_; ++c) rows_[c] = c;
    phases_.assign(dim_, Complex{1.0});
  }
  // Folds the pending run into the dense matrix, creating it if needed.
  void densify() {
    if (!dense_) dense_.emplace(num_qubits_);
    bool identity = true;
    for (std::size_t c = 0; c < dim_ && identity; ++c) identity = rows_[c] == c && phases_[c] == Complex{1.0};
    if (!identity) dense_->apply_monomial(rows_, phases_);
    reset();
  }

  std::size_t num_qubits_;
  std::size_t dim_;
  std::vector<std::size_t> rows_;
  std::vector<Complex> phases_;
  std::optional<DenseOperator> dense_;
};

void apply_abstract(OperatorBuilder& u, const AbstractCircuit& circuit) {
  for (const auto& set : circuit.sets) {
    for (const Gate& g : set.gates) {
      switch (g.kind) {
        case GateKind::H:
          u.h(g.q0);
          break;
        case GateKind::RX:
          u.rx(g.q0, g.angle);
          break;
        case GateKind::RZZ:
          u.rzz(g.q0, g.q1, g.angle);
          break;
      }
    }
  }
}

void apply_routed(OperatorBuilder& u, const RoutedCircuit& routed) {
  for (const auto& layer : routed.layers) {
    for (const Primitive& p : layer) {
      switch (p.kind) {
        case PrimitiveKind::CX:
          u.cx(p.q0, p.q1);
          break;
        case PrimitiveKind::RZ:
          u.rz(p.q0, p.angle);
          break;
        case PrimitiveKind::RX:
          u.rx(p.q0, p.angle);
          break;
        case PrimitiveKind::H:
          u.h(p.q0);
          break;
      }
    }
  }
}

}  // namespace

DenseOperator::DenseOperator(std::size_t num_qubits)
    : num_qubits_(num_qubits), dim_((check_size(num_qubits), std::size_t{1} << num_qubits)), data_(dim_ * dim_) {
  for (std::size_t k = 0; k < dim_; ++k) data_[k * dim_ + k] = 1.0;
}

void DenseOperator::check(Qubit q) const {
  if (q >= num_qubits_) throw Error(ErrorCode::OutOfRange, "qubit " + std::to_string(q) + " outside the register");
}

void DenseOperator::apply_single(Qubit q, const Complex (&m)[2][2]) {
  check(q);
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t r0 = 0; r0 < dim_; ++r0) {
    if (r0 & bit) continue;
    Complex* lo = &data_[r0 * dim_];
    Complex* hi = &data_[(r0 | bit) * dim_];
    for (std::size_t c = 0; c < dim_; ++c) {
      const Complex a = lo[c];
      const Complex b = hi[c];
      lo[c] = m[0][0] * a + m[0][1] * b;
      hi[c] = m[1][0] * a + m[1][1] * b;
    }
  }
}

void DenseOperator::apply_h(Qubit q) {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex m[2][2] = {{s, s}, {s, -s}};
  apply_single(q, m);
}

void DenseOperator::apply_rx(Qubit q, double theta) {
  const double c = std::cos(theta / 2.0);
  const Complex s = -kI * std::sin(theta / 2.0);
  const Complex m[2][2] = {{c, s}, {s, c}};
  apply_single(q, m);
}

void DenseOperator::apply_rz(Qubit q, double theta) {
  check(q);
  const Complex lo = std::exp(-kI * (theta / 2.0));
  const Complex hi = std::exp(kI * (theta / 2.0));
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t r = 0; r < dim_; ++r) {
    const Complex f = (r & bit) ? hi : lo;
    for (std::size_t c = 0; c < dim_; ++c) data_[r * dim_ + c] *= f;
  }
}

void DenseOperator::apply_cx(Qubit control, Qubit target) {
  check(control);
  check(target);
  if (control == target) throw Error(ErrorCode::InvalidInput, "cx on a single qubit");
  const std::size_t cb = std::size_t{1} << control;
  const std::size_t tb = std::size_t{1} << target;
  for (std::size_t r = 0; r < dim_; ++r) {
    if ((r & cb) && !(r & tb)) {
      std::swap_ranges(
          data_.begin() + static_cast<std::ptrdiff_t>(r * dim_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * dim_),
          data_.begin() + static_cast<std::ptrdiff_t>((r | tb) * dim_));
    }
  }
}

void DenseOperator::apply_rzz(Qubit a, Qubit b, double theta) {
  check(a);
  check(b);
  const Complex same = std::exp(-kI * (theta / 2.0));
  const Complex diff = std::exp(kI * (theta / 2.0));
  for (std::size_t r = 0; r < dim_; ++r) {
    const bool parity = (((r >> a) ^ (r >> b)) & 1U) != 0;
    const Complex f = parity ? diff : same;
    for (std::size_t c = 0; c < dim_; ++c) data_[r * dim_ + c] *= f;
  }
}

void DenseOperator::apply_diagonal(std::span<const Complex> phases) {
  if (phases.size() != dim_) throw Error(ErrorCode::LengthMismatch, "diagonal length differs from dimension");
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) data_[r * dim_ + c] *= phases[r];
  }
}

void DenseOperator::apply_qubit_permutation(std::span<const Qubit> target) {
  if (target.size() != num_qubits_) throw Error(ErrorCode::LengthMismatch, "permutation length differs from qubits");
  std::vector<Complex> out(data_.size());
  for (std::size_t r = 0; r < dim_; ++r) {
    std::size_t moved = 0;
    for (std::size_t k = 0; k < num_qubits_; ++k) {
      if ((r >> k) & 1U) moved |= std::size_t{1} << target[k];
    }
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(r * dim_), dim_,
                out.begin() + static_cast<std::ptrdiff_t>(moved * dim_));
  }
  data_ = std::move(out);
}

void DenseOperator::apply_monomial(std::span<const std::size_t> rows, std::span<const Complex> phases) {
  if (rows.size() != dim_ || phases.size() != dim_) throw Error(ErrorCode::LengthMismatch, "monomial length differs from dimension");
  std::vector<Complex> out(data_.size());
  for (std::size_t r = 0; r < dim_; ++r) {
    if (rows[r] >= dim_) throw Error(ErrorCode::OutOfRange, "monomial row outside the dimension");
    const Complex* from = &data_[r * dim_];
    Complex* to = &out[rows[r] * dim_];
    for (std::size_t c = 0; c < dim_; ++c) to[c] = phases[r] * from[c];
  }
  data_ = std::move(out);
}

void DenseOperator::scale(Complex factor) {
  for (Complex& x : data_) x *= factor;
}

double DenseOperator::unitarity_error() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < dim_; ++k) acc += std::conj(data_[k * dim_ + i]) * data_[k * dim_ + j];
      if (i == j) acc -= 1.0;
      sum += std::norm(acc);
    }
  }
  return std::sqrt(sum);
}

double DenseOperator::distance_up_to_phase(const DenseOperator& other) const {
  if (other.dim_ != dim_) throw Error(ErrorCode::LengthMismatch, "operators differ in dimension");
  Complex overlap = 0.0;
  for (std::size_t k = 0; k < data_.size(); ++k) overlap += std::conj(other.data_[k]) * data_[k];
  const double mag = std::abs(overlap);
  const Complex phase = mag > 0.0 ? overlap / mag : Complex{1.0};
  double sum = 0.0;
  for (std::size_t k = 0; k < data_.size(); ++k) sum += std::norm(data_[k] - phase * other.data_[k]);
  return std::sqrt(sum);
}

double DenseOperator::off_diagonal_norm() const {
  double sum = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      if (r != c) sum += std::norm(data_[r * dim_ + c]);
    }
  }
  return std::sqrt(sum);
}

DenseOperator cost_unitary(const ProblemGraph& graph, double gamma) {
  DenseOperator u(graph.num_vars());
  std::vector<Complex> phases(u.dim());
  for (std::size_t r = 0; r < u.dim(); ++r) {
    double energy = 0.0;
    for (const Term& t : graph.terms()) {
      const bool parity = (((r >> t.i) ^ (r >> t.j)) & 1U) != 0;
      energy += parity ? -t.weight : t.weight;
    }
    phases[r] = std::exp(-kI * (gamma * energy));
  }
  u.apply_diagonal(phases);
  return u;
}

DenseOperator abstract_unitary(const AbstractCircuit& circuit, std::size_t num_qubits) {
  if (circuit.num_qubits > num_qubits) throw Error(ErrorCode::OutOfRange, "register smaller than the circuit");
  OperatorBuilder u(num_qubits);
  apply_abstract(u, circuit);
  return u.take();
}

DenseOperator circuit_unitary(const RoutedCircuit& routed) {
  OperatorBuilder u(routed.num_qubits);
  apply_routed(u, routed);
  return u.take();
}

Verdict verify_circuit(const RoutedCircuit& routed, const AbstractCircuit& circuit) {
  const std::size_t n = routed.num_qubits;
  check_size(n);
  if (routed.initial_mapping.size() != n || routed.final_mapping.size() != n) {
    throw Error(ErrorCode::LengthMismatch, "mapping length differs from the register");
  }
  if (circuit.num_qubits > n) throw Error(ErrorCode::OutOfRange, "register smaller than the circuit");
  const auto init = routed.initial_mapping.logical_to_physical();
  std::vector<Qubit> to_logical(n);
  for (std::size_t l = 0; l < n; ++l) to_logical[init[l]] = static_cast<Qubit>(l);

  OperatorBuilder expected(n);
  expected.permute(to_logical);
  apply_abstract(expected, circuit);
  expected.permute(routed.final_mapping.logical_to_physical());

  OperatorBuilder actual(n);
  apply_routed(actual, routed);
  const double distance = distance_up_to_phase(actual, expected);
  return {distance < kEquivalenceTolerance, distance};
}

bool verify_equivalence(const RoutedCircuit& routed, const ProblemGraph& graph, double gamma) {
  return verify_circuit(routed, cost_layer_circuit(graph, gamma)).equivalent;
}

}  // namespace swaproute
