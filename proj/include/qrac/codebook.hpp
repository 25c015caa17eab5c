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

// Encoding side of the (n, n-1) code.
//
// Even-parity inputs map to the computational basis state of their first
// n-1 bits. An odd-parity input y maps to the uniform superposition of its n
// Hamming neighbours, signed by the entries of
//     A_n = sum_l Z_1 ... Z_{l-1} X_l,
// whose odd/even block is orthogonal up to a factor n.

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrac/bits.hpp"
#include "qrac/dense.hpp"
#include "qrac/json_io.hpp"
#include "qrac/pauli.hpp"

namespace qrac {

/// An (n, n-1) code: n classical bits into m = n - 1 qubits.
class QracInstance {
 public:
  explicit QracInstance(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("QracInstance: n must be at least 2 (no (1,0) code exists)");
    if (n > kMaxSites) throw std::invalid_argument("QracInstance: n must be at most 64");
  }

  int n() const { return n_; }
  int num_qubits() const { return n_ - 1; }
  std::size_t dim() const { return std::size_t{1} << (n_ - 1); }
  std::uint64_t num_inputs() const { return std::uint64_t{1} << n_; }

  Bits input(std::uint64_t value) const { return Bits(n_, value); }

  void require_dense(int dense_limit) const {
    if (n_ > dense_limit) {
      throw std::length_error("n = " + std::to_string(n_) + " exceeds dense limit " + std::to_string(dense_limit));
    }
  }

  void require_index(int k) const {
    if (k < 1 || k > n_) throw std::invalid_argument("bit index k = " + std::to_string(k) + " outside [1, n]");
  }

 private:
  int n_;
};

/// Sign of (A_n)_{yx}: zero unless y and x differ in exactly one position l,
/// in which case it is the parity of x_1 ... x_{l-1}.
inline int a_entry(const Bits& y, const Bits& x) {
  if (y.size() != x.size()) throw std::invalid_argument("a_entry: length mismatch");
  const std::uint64_t diff = y.value() ^ x.value();
  if (std::popcount(diff) != 1) return 0;
  const int pos = std::countr_zero(diff);
  const std::uint64_t prefix = pos + 1 >= 64 ? 0 : x.value() >> (pos + 1);
  return (std::popcount(prefix) & 1) ? -1 : +1;
}

/// A_n as a sum of the words g_l = Z_1 ... Z_{l-1} X_l.
inline PauliSum a_pauli(int n) {
  PauliSum::Accumulator acc(n);
  for (int l = 1; l <= n; ++l) {
    PauliString g(n);
    for (int s = 1; s < l; ++s) g = g.with_letter(s, Pauli::Z);
    acc.add(1.0, g.with_letter(l, Pauli::X));
  }
  return acc.finish();
}

/// Basis index of an even-parity input: drop the redundant last bit.
inline std::size_t even_basis_index(const Bits& x) { return static_cast<std::size_t>(x.value() >> 1); }

inline StateVector encode(const Bits& x) {
  const QracInstance inst(x.size());
  auto psi = StateVector::zeros(inst.dim());
  if (!x.is_odd()) {
    psi[even_basis_index(x)] = 1.0;
    return psi;
  }
  const double amp = 1.0 / std::sqrt(static_cast<double>(inst.n()));
  for (int l = 1; l <= inst.n(); ++l) {
    const Bits nb = x.flipped(l);
    psi[even_basis_index(nb)] = amp * a_entry(x, nb);
  }
  return psi;
}

/// (|0...0> + sum_k |e_k>) / sqrt(n) on n - 1 qubits.
inline StateVector reference_state(int n) {
  const QracInstance inst(n);
  auto psi = StateVector::zeros(inst.dim());
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  psi[0] = amp;
  for (int k = 1; k <= inst.num_qubits(); ++k) psi[std::size_t{1} << (inst.num_qubits() - k)] = amp;
  return psi;
}

/// Reference input 0...01 whose encoding is reference_state(n).
inline Bits reference_input(int n) { return Bits(n, 1); }

/// Pauli displacement carrying the reference state onto encode(y):
///   encode(y) = global_sign * Z(v') X(u) reference_state(n),
/// with X(u), Z(v') acting on the first n - 1 sites.
struct DisplacementData {
  Bits u;        // y xor y_ref, n bits
  Bits v;        // v_l = u_1 + ... + u_{l-1} mod 2, n bits
  Bits v_prime;  // v'_i = v_i xor v_n, n - 1 bits
  int global_sign;
};

inline DisplacementData displacement(const Bits& y) {
  if (!y.is_odd()) throw std::invalid_argument("displacement: input " + y.str() + " has even parity");
  const int n = y.size();
  if (n < 2) throw std::invalid_argument("displacement: n must be at least 2");
  const Bits u = y ^ reference_input(n);
  std::uint64_t v = 0;
  int running = 0;
  for (int l = 1; l <= n; ++l) {
    v = (v << 1) | static_cast<std::uint64_t>(running);
    running ^= u[l];
  }
  const Bits vb(n, v);
  const std::uint64_t vn = static_cast<std::uint64_t>(vb[n]);
  const std::uint64_t fill = vn ? (std::uint64_t{1} << (n - 1)) - 1 : 0;
  const Bits v_prime(n - 1, (v >> 1) ^ fill);
  return {u, vb, v_prime, dot(vb, y) ? -1 : +1};
}

/// global_sign * Z(v') X(u) |psi>, acting on the first n - 1 sites.
inline StateVector apply_displacement(const DisplacementData& d, const StateVector& psi) {
  const int m = d.v_prime.size();
  if (psi.dim() != (std::size_t{1} << m)) throw std::invalid_argument("apply_displacement: dimension mismatch");
  const std::uint64_t xmask = d.u.value() >> 1;
  const std::uint64_t zmask = d.v_prime.value();
  auto out = StateVector::zeros(psi.dim());
  for (std::size_t b = 0; b < psi.dim(); ++b) {
    const std::size_t target = b ^ xmask;
    const bool flip = std::popcount(target & zmask) & 1;
    out[target] = psi[b] * static_cast<double>(flip ? -d.global_sign : d.global_sign);
  }
  return out;
}

/// The n-site word Z(v)X(u) (up to phase) used for the covariance identity
/// D A_n D^dagger = A_n.
inline PauliString displacement_word(const DisplacementData& d) {
  return PauliString(d.u.size(), d.u.value(), d.v.value());
}

/// Exact text for amplitudes of the form +-1 or +-1/sqrt(n); 17-digit
/// decimal otherwise.
inline std::string amplitude_text(double a, int n) {
  const double rt = std::sqrt(static_cast<double>(n));
  if (std::abs(std::abs(a) - 1.0) < tol::kConstruction) return a < 0 ? "-1" : "1";
  if (std::abs(std::abs(a) * rt - 1.0) < tol::kConstruction) {
    return std::string(a < 0 ? "-" : "") + "1/sqrt(" + std::to_string(n) + ")";
  }
  return format_double(a);
}

inline ordered_json state_json(const Bits& x) {
  const auto psi = encode(x);
  ordered_json amps = ordered_json::array();
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    if (psi[i] == cplx(0.0)) continue;
    amps.push_back({{"index", i}, {"amplitude", amplitude_text(psi[i].real(), x.size())}, {"value", psi[i].real()}});
  }
  return {{"input", x.str()}, {"parity", x.is_odd() ? "odd" : "even"}, {"amplitudes", amps}};
}

/// Codebook export: every input (or just `only`) with its sparse amplitudes.
inline ordered_json codebook_json(const QracInstance& inst, const std::optional<Bits>& only = std::nullopt) {
  ordered_json states = ordered_json::array();
  if (only) {
    if (only->size() != inst.n()) throw std::invalid_argument("codebook_json: bitstring length differs from n");
    states.push_back(state_json(*only));
  } else {
    for (std::uint64_t v = 0; v < inst.num_inputs(); ++v) states.push_back(state_json(inst.input(v)));
  }
  return {{"schema", "qrac-codebook"},
          {"version", 1},
          {"n", inst.n()},
          {"num_qubits", inst.num_qubits()},
          {"basis_order", "qubit 1 is the most significant bit"},
          {"states", states}};
}

}  // namespace qrac
