// Copyright 2026 The QRAC Authors
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

// Circuit synthesis for the (n, n-1) code.
//
// Decoding: a cascade of n - 1 Pauli rotations R_m = exp(-i theta_m G_m / 2)
// that folds every W_j coefficient of O_k into W_k, so U O_k U^dagger = E_k
// and bit k is read from a computational-basis measurement. Left steps
// (m < k) use G_m = i W_{m+1} W_m and run m = 1, 2, ...; right steps
// (m >= k) use G_m = i W_m W_{m+1} and run m = n-1 down to k. Every G_m
// touches at most sites m and m+1.
//
// Encoding: a ladder of multi-controlled RY gates prepares the reference
// state, then an X/Z layer displaces it onto the requested codeword.
//
// Wires are 0-based (wire w is qubit w + 1); gate lists are in application
// order.

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrac/codebook.hpp"
#include "qrac/decoder.hpp"
#include "qrac/dense.hpp"
#include "qrac/pauli.hpp"

namespace qrac {

enum class GateKind { H, X, Z, S, Sdg, RY, RZ, CNOT, MCRY };

struct Gate {
  GateKind kind;
  int target = 0;
  std::vector<int> controls;  // CNOT: exactly one; MCRY: any number
  std::vector<int> polarity;  // MCRY: required value of each control
  double angle = 0.0;

  static Gate single(GateKind kind, int wire, double angle = 0.0) { return {kind, wire, {}, {}, angle}; }
  static Gate cnot(int control, int target) { return {GateKind::CNOT, target, {control}, {1}, 0.0}; }
  static Gate mcry(std::vector<int> controls, std::vector<int> polarity, int target, double angle) {
    if (controls.size() != polarity.size()) throw std::invalid_argument("mcry: controls and polarity differ in size");
    return {GateKind::MCRY, target, std::move(controls), std::move(polarity), angle};
  }

  bool is_rotation() const { return kind == GateKind::RY || kind == GateKind::RZ || kind == GateKind::MCRY; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Provenance carried into exported headers: "n=3 k=1" or "n=3 y=100".
struct CircuitInfo {
  int n = 0;
  std::optional<int> k;
  std::optional<std::string> encode_input;

  std::string header() const {
    std::string h = "n=" + std::to_string(n);
    if (k) h += " k=" + std::to_string(*k);
    if (encode_input) h += " y=" + *encode_input;
    return h;
  }

  friend bool operator==(const CircuitInfo&, const CircuitInfo&) = default;
};

struct Circuit {
  int num_qubits = 0;
  std::vector<Gate> gates;
  CircuitInfo info;

  std::size_t count(GateKind kind) const {
    std::size_t c = 0;
    for (const auto& g : gates) c += g.kind == kind;
    return c;
  }
  std::size_t cnot_count() const { return count(GateKind::CNOT); }

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

enum class Stage { Left, Right };

struct RotationStep {
  PauliString generator;
  double angle;
  Stage stage;
  int m;
};

namespace detail {

/// i * a * b as a signed Hermitian word; a and b must anticommute.
inline PauliString hermitian_product(const PauliString& a, const PauliString& b) {
  const auto p = multiply(a, b);
  const int phase = (p.phase + 1) % 4;
  if (phase % 2 != 0) throw std::logic_error("hermitian_product: words commute, i*a*b is not Hermitian");
  return phase == 0 ? p.word : p.word.negated();
}

}  // namespace detail

/// Applies each step's rotation in order: R_last ... R_first O R_first^dagger ... .
inline PauliSum conjugate_through(const PauliSum& target, const std::vector<RotationStep>& steps) {
  PauliSum out = target;
  for (const auto& s : steps) out = rotate_conjugate(out, s.generator, s.angle);
  return out;
}

inline std::vector<RotationStep> diagonalization_rotations(const QracInstance& inst, int k) {
  inst.require_index(k);
  const int n = inst.n();
  const auto w = w_decomposition(inst, k);
  const double eps = epsilon(n);
  const double ck = w.coeff(k);

  std::vector<RotationStep> steps;
  for (int m = 1; m <= k - 1; ++m) {
    const double angle = m < k - 1 ? std::atan(std::sqrt(static_cast<double>(m)))
                                   : std::atan(std::sqrt(static_cast<double>(k - 1)) * eps / ck);
    steps.push_back({detail::hermitian_product(w.word(m + 1), w.word(m)), angle, Stage::Left, m});
  }
  for (int m = n - 1; m >= k; --m) {
    const double angle =
        m > k ? std::atan(std::sqrt(static_cast<double>(n - m)))
              : std::atan(std::sqrt(static_cast<double>(n - k)) * eps / std::sqrt((k - 1) * eps * eps + ck * ck));
    steps.push_back({detail::hermitian_product(w.word(m), w.word(m + 1)), angle, Stage::Right, m});
  }

  const auto rotated = conjugate_through(observable_explicit(inst, k), steps);
  const double residual = l1_distance(rotated, PauliSum::single(diagonal_word(inst, k)));
  if (residual >= tol::kConstruction) {
    throw std::runtime_error("diagonalization_rotations: contraction residual " + std::to_string(residual) +
                             " for n = " + std::to_string(n) + ", k = " + std::to_string(k));
  }
  return steps;
}

/// exp(-i theta s P / 2) for a signed word s P of weight <= 2.
///
/// Basis changes take each letter to Z: X via H, Y via S^dagger then H.
/// A weight-2 Z Z rotation is CNOT, RZ on the second wire, CNOT. The sign s
/// is folded into the angle.
inline void append_pauli_rotation(Circuit& c, const PauliString& generator, double theta) {
  const auto support = generator.support();
  if (support.size() > 2) {
    throw std::invalid_argument("lower_to_gates: generator " + generator.str() + " has weight > 2");
  }
  if (support.empty()) return;  // global phase
  const double angle = theta * generator.sign();

  if (support.size() == 1) {
    const int w = support[0] - 1;
    switch (generator.letter(support[0])) {
      case Pauli::Z:
        c.gates.push_back(Gate::single(GateKind::RZ, w, angle));
        break;
      case Pauli::Y:
        c.gates.push_back(Gate::single(GateKind::RY, w, angle));
        break;
      case Pauli::X:
        c.gates.push_back(Gate::single(GateKind::H, w));
        c.gates.push_back(Gate::single(GateKind::RZ, w, angle));
        c.gates.push_back(Gate::single(GateKind::H, w));
        break;
      case Pauli::I:
        break;
    }
    return;
  }

  auto to_z = [&](int site) {
    const int w = site - 1;
    switch (generator.letter(site)) {
      case Pauli::X:
        c.gates.push_back(Gate::single(GateKind::H, w));
        break;
      case Pauli::Y:
        c.gates.push_back(Gate::single(GateKind::Sdg, w));
        c.gates.push_back(Gate::single(GateKind::H, w));
        break;
      default:
        break;
    }
  };
  auto from_z = [&](int site) {
    const int w = site - 1;
    switch (generator.letter(site)) {
      case Pauli::X:
        c.gates.push_back(Gate::single(GateKind::H, w));
        break;
      case Pauli::Y:
        c.gates.push_back(Gate::single(GateKind::H, w));
        c.gates.push_back(Gate::single(GateKind::S, w));
        break;
      default:
        break;
    }
  };
  const int a = support[0];
  const int b = support[1];
  to_z(a);
  to_z(b);
  c.gates.push_back(Gate::cnot(a - 1, b - 1));
  c.gates.push_back(Gate::single(GateKind::RZ, b - 1, angle));
  c.gates.push_back(Gate::cnot(a - 1, b - 1));
  from_z(a);
  from_z(b);
}

inline Circuit lower_to_gates(const std::vector<RotationStep>& steps, CircuitInfo info = {}) {
  if (steps.empty()) throw std::invalid_argument("lower_to_gates: empty step list has no qubit count");
  Circuit c{steps.front().generator.num_sites(), {}, std::move(info)};
  for (const auto& s : steps) {
    if (s.generator.num_sites() != c.num_qubits) throw std::invalid_argument("lower_to_gates: site-count mismatch");
    append_pauli_rotation(c, s.generator, s.angle);
  }
  return c;
}

inline Circuit decoding_circuit(const QracInstance& inst, int k) {
  return lower_to_gates(diagonalization_rotations(inst, k), CircuitInfo{inst.n(), k, std::nullopt});
}

/// Ladder angle for qubit k of the reference-state preparation.
inline double ladder_angle(int n, int k) { return 2.0 * std::atan(1.0 / std::sqrt(static_cast<double>(n - k))); }

/// Prepares encode(y) from |0...0>, up to the global sign
/// displacement(y).global_sign for odd y. Even y needs only X gates.
inline Circuit encoding_circuit(const Bits& y, const QracInstance& inst) {
  if (y.size() != inst.n()) throw std::invalid_argument("encoding_circuit: bitstring length differs from n");
  const int m = inst.num_qubits();
  Circuit c{m, {}, CircuitInfo{inst.n(), std::nullopt, y.str()}};
  if (!y.is_odd()) {
    for (int i = 1; i <= m; ++i)
      if (y[i]) c.gates.push_back(Gate::single(GateKind::X, i - 1));
    return c;
  }
  for (int k = 1; k <= m; ++k) {
    std::vector<int> controls;
    for (int j = 0; j < k - 1; ++j) controls.push_back(j);
    std::vector<int> polarity(controls.size(), 0);
    c.gates.push_back(Gate::mcry(std::move(controls), std::move(polarity), k - 1, ladder_angle(inst.n(), k)));
  }
  const auto d = displacement(y);
  for (int i = 1; i <= m; ++i)
    if (d.u[i]) c.gates.push_back(Gate::single(GateKind::X, i - 1));
  for (int i = 1; i <= m; ++i)
    if (d.v_prime[i]) c.gates.push_back(Gate::single(GateKind::Z, i - 1));
  return c;
}

namespace detail {

/// C^k RY(theta) with all-ones controls:
///   C^{k-1}RY(theta/2), CNOT(c_k, t), C^{k-1}RY(-theta/2), CNOT(c_k, t).
inline void emit_positive_mcry(std::vector<Gate>& out, const std::vector<int>& controls, std::size_t count, int target,
                               double angle) {
  if (count == 0) {
    out.push_back(Gate::single(GateKind::RY, target, angle));
    return;
  }
  const int last = controls[count - 1];
  emit_positive_mcry(out, controls, count - 1, target, angle / 2.0);
  out.push_back(Gate::cnot(last, target));
  emit_positive_mcry(out, controls, count - 1, target, -angle / 2.0);
  out.push_back(Gate::cnot(last, target));
}

}  // namespace detail

/// Rewrites every MCRY into X, CNOT and RY gates. Zero-polarity controls are
/// conjugated with X. The recursion is ancilla-free but uses O(2^k) gates
/// for k controls.
inline Circuit expand_mcry(const Circuit& c) {
  Circuit out{c.num_qubits, {}, c.info};
  for (const auto& g : c.gates) {
    if (g.kind != GateKind::MCRY) {
      out.gates.push_back(g);
      continue;
    }
    std::vector<int> flipped;
    for (std::size_t i = 0; i < g.controls.size(); ++i)
      if (g.polarity[i] == 0) flipped.push_back(g.controls[i]);
    for (int w : flipped) out.gates.push_back(Gate::single(GateKind::X, w));
    detail::emit_positive_mcry(out.gates, g.controls, g.controls.size(), g.target, g.angle);
    for (int w : flipped) out.gates.push_back(Gate::single(GateKind::X, w));
  }
  return out;
}

namespace detail {

struct Mat2 {
  cplx a, b, c, d;  // [[a, b], [c, d]]
};

inline Mat2 gate_matrix(const Gate& g) {
  const double h = 1.0 / std::sqrt(2.0);
  const cplx i(0.0, 1.0);
  switch (g.kind) {
    case GateKind::H:
      return {h, h, h, -h};
    case GateKind::X:
      return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Z:
      return {1.0, 0.0, 0.0, -1.0};
    case GateKind::S:
      return {1.0, 0.0, 0.0, i};
    case GateKind::Sdg:
      return {1.0, 0.0, 0.0, -i};
    case GateKind::RY:
    case GateKind::MCRY:
      return {std::cos(g.angle / 2), -std::sin(g.angle / 2), std::sin(g.angle / 2), std::cos(g.angle / 2)};
    case GateKind::RZ:
      return {std::exp(-i * (g.angle / 2)), 0.0, 0.0, std::exp(i * (g.angle / 2))};
    case GateKind::CNOT:
      break;
  }
  throw std::logic_error("gate_matrix: not a single-qubit gate");
}

inline void check_wire(int w, int num_qubits) {
  if (w < 0 || w >= num_qubits) throw std::out_of_range("gate wire " + std::to_string(w) + " out of range");
}

}  // namespace detail

/// Applies one gate in place; wire w is basis bit (num_qubits - 1 - w).
inline void apply_gate(StateVector& psi, const Gate& g, int num_qubits) {
  detail::check_wire(g.target, num_qubits);
  for (int c : g.controls) detail::check_wire(c, num_qubits);
  const std::size_t tbit = std::size_t{1} << (num_qubits - 1 - g.target);
  std::size_t cmask = 0;
  std::size_t cwant = 0;
  for (std::size_t i = 0; i < g.controls.size(); ++i) {
    const std::size_t b = std::size_t{1} << (num_qubits - 1 - g.controls[i]);
    cmask |= b;
    if (g.kind == GateKind::CNOT || g.polarity[i]) cwant |= b;
  }
  if (cmask & tbit) throw std::invalid_argument("apply_gate: control equals target");

  if (g.kind == GateKind::CNOT) {
    for (std::size_t idx = 0; idx < psi.dim(); ++idx)
      if (!(idx & tbit) && (idx & cmask) == cwant) std::swap(psi[idx], psi[idx | tbit]);
    return;
  }
  const auto u = detail::gate_matrix(g);
  for (std::size_t idx = 0; idx < psi.dim(); ++idx) {
    if ((idx & tbit) || (idx & cmask) != cwant) continue;
    const cplx v0 = psi[idx];
    const cplx v1 = psi[idx | tbit];
    psi[idx] = u.a * v0 + u.b * v1;
    psi[idx | tbit] = u.c * v0 + u.d * v1;
  }
}

/// Runs the circuit on `initial` (default |0...0>).
inline StateVector simulate(const Circuit& c, std::optional<StateVector> initial = std::nullopt) {
  StateVector psi = initial ? std::move(*initial) : StateVector::basis(std::size_t{1} << c.num_qubits, 0);
  if (psi.dim() != (std::size_t{1} << c.num_qubits)) throw std::invalid_argument("simulate: dimension mismatch");
  for (const auto& g : c.gates) apply_gate(psi, g, c.num_qubits);
  return psi;
}

inline DenseOperator circuit_to_unitary(const Circuit& c, int dense_limit = kDefaultDenseLimit) {
  if (c.num_qubits > dense_limit) {
    throw std::length_error("circuit_to_unitary: " + std::to_string(c.num_qubits) + " qubits exceeds dense limit " +
                            std::to_string(dense_limit));
  }
  const std::size_t dim = std::size_t{1} << c.num_qubits;
  DenseOperator u(dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const auto out = simulate(c, StateVector::basis(dim, col));
    for (std::size_t r = 0; r < dim; ++r) u(r, col) = out[r];
  }
  if ((u.adjoint() * u).max_abs_diff(DenseOperator::identity(dim)) >= tol::kUnitarity) {
    throw std::runtime_error("circuit_to_unitary: result is not unitary");
  }
  return u;
}

}  // namespace qrac
