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
 * @file oracle.hpp
 * @brief Dense unitary construction for small registers, used to prove that
 * routed circuits implement the intended operator.
 *
 * Qubit k is bit k of the basis index (qubit 0 least significant). Gates:
 *   RZ(t) = diag(e^{-it/2}, e^{it/2}),  RX(t) = exp(-i t X / 2),
 *   RZZ(t) = exp(-i t Z Z / 2),  CX with q0 the control.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "swaproute/problem.hpp"
#include "swaproute/router.hpp"

namespace swaproute {

using Complex = std::complex<double>;

/// Square 2^n x 2^n matrix, row-major. Gates act by left multiplication.
class DenseOperator {
 public:
  static constexpr std::size_t kMaxQubits = 12;

  /// Identity on `num_qubits`; TooLarge above kMaxQubits.
  explicit DenseOperator(std::size_t num_qubits);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t dim() const noexcept { return dim_; }
  Complex operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }
  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }

  void apply_h(Qubit q);
  void apply_rx(Qubit q, double theta);
  void apply_rz(Qubit q, double theta);
  void apply_cx(Qubit control, Qubit target);
  void apply_rzz(Qubit a, Qubit b, double theta);
  /// Multiplies row r by phases[r].
  void apply_diagonal(std::span<const Complex> phases);
  /// Left-multiplies by the permutation sending qubit k to qubit target[k].
  void apply_qubit_permutation(std::span<const Qubit> target);
  /// Left-multiplies by the generalized permutation |c> -> phases[c] |rows[c]>.
  void apply_monomial(std::span<const std::size_t> rows, std::span<const Complex> phases);
  void scale(Complex factor);

  /// ||U^dagger U - I||_F.
  double unitarity_error() const;
  /// min over phases phi of ||A - e^{i phi} B||_F.
  double distance_up_to_phase(const DenseOperator& other) const;
  double off_diagonal_norm() const;

 private:
  void apply_single(Qubit q, const Complex (&m)[2][2]);
  void check(Qubit q) const;

  std::size_t num_qubits_;
  std::size_t dim_;
  std::vector<Complex> data_;
};

/// Diagonal exp(-i gamma sum w_ij z_i z_j) over graph.num_vars() qubits.
DenseOperator cost_unitary(const ProblemGraph& graph, double gamma);

/// Ideal operator of an abstract circuit on `num_qubits` >= circuit.num_qubits.
DenseOperator abstract_unitary(const AbstractCircuit& circuit, std::size_t num_qubits);

/// Product of the routed primitives in layer order.
DenseOperator circuit_unitary(const RoutedCircuit& routed);

struct Verdict {
  bool equivalent = false;
  double distance = 0.0;  // Frobenius, after removing the global phase
};

inline constexpr double kEquivalenceTolerance = 1e-8;

/**
 * Compares circuit_unitary(routed) with P(final) U P(initial)^{-1}, where U is
 * the ideal operator of `circuit` and P(m) moves logical qubit l to m(l).
 */
Verdict verify_circuit(const RoutedCircuit& routed, const AbstractCircuit& circuit);

/// verify_circuit against a single cost layer exp(-i gamma H_C).
bool verify_equivalence(const RoutedCircuit& routed, const ProblemGraph& graph, double gamma);

}  // namespace swaproute
