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

// Decoding side: the two-outcome measurement for bit k, built two ways.
//
// Dense route: S_{k,b} = P^E_{k,b} + P^O_{k,b} has spectrum {1 +- sqrt(mu)}
// with mu = (n-1)/n, and the POVM element for b is the projector onto the
// top eigenspace, (S_{k,b} - (1 - sqrt(mu)) I) / (2 sqrt(mu)).
//
// Symbolic route: O_k = M_{0|k} - M_{1|k} written as n mutually
// anticommuting Pauli words W_j with weights c_j, sum c_j^2 = 1.

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrac/codebook.hpp"
#include "qrac/dense.hpp"
#include "qrac/json_io.hpp"
#include "qrac/pauli.hpp"

namespace qrac {

enum class Parity { Even, Odd };

inline double overlap_mu(int n) { return static_cast<double>(n - 1) / n; }

/// Off-diagonal weight 1/sqrt(n(n-1)).
inline double epsilon(int n) { return 1.0 / std::sqrt(static_cast<double>(n) * (n - 1)); }

/// Weight sqrt((n-1)/n) of the diagonal word.
inline double diagonal_weight(int n) { return std::sqrt(overlap_mu(n)); }

/// Projector onto span{ psi_x : parity(x) = parity, x_k = b }.
inline DenseOperator parity_projector(const QracInstance& inst, int k, int b, Parity parity,
                                      int dense_limit = kDefaultDenseLimit) {
  inst.require_dense(dense_limit);
  inst.require_index(k);
  if (b != 0 && b != 1) throw std::invalid_argument("parity_projector: b must be 0 or 1");
  const int want_parity = parity == Parity::Odd ? 1 : 0;
  DenseOperator p(inst.dim());
  for (std::uint64_t v = 0; v < inst.num_inputs(); ++v) {
    const Bits x = inst.input(v);
    if (x.parity() != want_parity || x[k] != b) continue;
    const auto psi = encode(x);
    p += DenseOperator::outer(psi, psi);
  }
  return p;
}

inline DenseOperator projector_sum(const QracInstance& inst, int k, int b, int dense_limit = kDefaultDenseLimit) {
  return parity_projector(inst, k, b, Parity::Even, dense_limit) +
         parity_projector(inst, k, b, Parity::Odd, dense_limit);
}

struct PovmPair {
  int k;
  DenseOperator m0;
  DenseOperator m1;

  const DenseOperator& element(int b) const { return b == 0 ? m0 : m1; }
};

inline PovmPair povm(const QracInstance& inst, int k, int dense_limit = kDefaultDenseLimit) {
  const double root_mu = std::sqrt(overlap_mu(inst.n()));
  const auto id = DenseOperator::identity(inst.dim());
  auto top_projector = [&](int b) {
    auto s = projector_sum(inst, k, b, dense_limit);
    s -= (1.0 - root_mu) * id;
    s *= 1.0 / (2.0 * root_mu);
    return s;
  };
  PovmPair out{k, top_projector(0), top_projector(1)};
  for (const auto* m : {&out.m0, &out.m1}) {
    if (m->max_abs_diff(*m * *m) > tol::kVerify) {
      throw std::runtime_error("povm: element for k = " + std::to_string(k) +
                               " is not a projector; spectrum of S_{k,b} is off {1 +- sqrt(mu)}");
    }
  }
  if ((out.m0 + out.m1).max_abs_diff(id) > tol::kProjector) throw std::runtime_error("povm: elements do not sum to I");
  return out;
}

/// Diagonal word of O_k: Z_k, or the parity Z_1 ... Z_{n-1} for k = n.
inline PauliString diagonal_word(const QracInstance& inst, int k) {
  inst.require_index(k);
  const int m = inst.num_qubits();
  PauliString e(m);
  if (k < inst.n()) return e.with_letter(k, Pauli::Z);
  for (int s = 1; s <= m; ++s) e = e.with_letter(s, Pauli::Z);
  return e;
}

namespace detail {

/// `first` letter, Z on every site strictly between, `last` letter (if any).
inline PauliString chain(int num_sites, int from, Pauli first, int to, Pauli last) {
  PauliString w(num_sites);
  w = w.with_letter(from, first);
  for (int s = from + 1; s < to && s <= num_sites; ++s) w = w.with_letter(s, Pauli::Z);
  if (to <= num_sites) w = w.with_letter(to, last);
  return w;
}

}  // namespace detail

/// Off-diagonal part K_k as a sum of unit-weight words.
inline PauliSum off_diagonal_part(const QracInstance& inst, int k) {
  inst.require_index(k);
  const int n = inst.n();
  const int m = inst.num_qubits();
  PauliSum::Accumulator acc(m);
  if (k < n) {
    for (int l = k + 1; l <= n - 1; ++l) acc.add(1.0, detail::chain(m, k, Pauli::X, l, Pauli::X));
    acc.add(1.0, detail::chain(m, k, Pauli::X, n, Pauli::I));  // X_k Z_{k+1} ... Z_{n-1}
    for (int l = 1; l <= k - 1; ++l) acc.add(1.0, detail::chain(m, l, Pauli::Y, k, Pauli::Y));
  } else {
    for (int l = 1; l <= n - 1; ++l) {
      PauliString w(m);
      for (int s = 1; s < l; ++s) w = w.with_letter(s, Pauli::Z);
      acc.add(-1.0, w.with_letter(l, Pauli::X));
    }
  }
  return acc.finish();
}

/// O_k = sqrt((n-1)/n) E_k + K_k / sqrt(n(n-1)).
inline PauliSum observable_explicit(const QracInstance& inst, int k) {
  const int n = inst.n();
  return PauliSum::single(diagonal_word(inst, k), diagonal_weight(n)) +
         off_diagonal_part(inst, k).scaled(epsilon(n));
}

struct WDecomposition {
  int k;
  std::vector<PauliString> words;  // W_1 ... W_n, signs carried by the words
  std::vector<double> coeffs;      // c_1 ... c_n

  PauliSum sum() const {
    PauliSum::Accumulator acc(words.front().num_sites());
    for (std::size_t j = 0; j < words.size(); ++j) acc.add(coeffs[j], words[j]);
    return acc.finish();
  }

  const PauliString& word(int j) const { return words.at(static_cast<std::size_t>(j - 1)); }
  double coeff(int j) const { return coeffs.at(static_cast<std::size_t>(j - 1)); }
};

/// Region I (j < k): Y_j Z ... Z Y_k.  Region II (j = k): the diagonal word.
/// Region III (j > k): X_k Z ... Z X_j, with the X_j dropped for j = n.
/// For k = n region I is -Z_1 ... Z_{j-1} X_j instead.
inline WDecomposition w_decomposition(const QracInstance& inst, int k) {
  inst.require_index(k);
  const int n = inst.n();
  const int m = inst.num_qubits();
  const double eps = epsilon(n);
  WDecomposition out{k, {}, {}};
  for (int j = 1; j <= n; ++j) {
    if (j == k) {
      out.words.push_back(diagonal_word(inst, k));
      out.coeffs.push_back(diagonal_weight(n));
    } else if (k == n) {
      PauliString w(m);
      for (int s = 1; s < j; ++s) w = w.with_letter(s, Pauli::Z);
      out.words.push_back(w.with_letter(j, Pauli::X).negated());
      out.coeffs.push_back(eps);
    } else if (j < k) {
      out.words.push_back(detail::chain(m, j, Pauli::Y, k, Pauli::Y));
      out.coeffs.push_back(eps);
    } else {
      out.words.push_back(detail::chain(m, k, Pauli::X, j, Pauli::X));
      out.coeffs.push_back(eps);
    }
  }
  return out;
}

inline DenseOperator observable_from_povm(const QracInstance& inst, int k, int dense_limit = kDefaultDenseLimit) {
  const auto p = povm(inst, k, dense_limit);
  auto o = p.m0 - p.m1;
  const double mismatch = o.max_abs_diff(to_dense(observable_explicit(inst, k), dense_limit));
  if (mismatch > tol::kVerify) {
    throw std::runtime_error("observable_from_povm: POVM difference deviates from the Pauli form by " +
                             std::to_string(mismatch) + " for k = " + std::to_string(k));
  }
  return o;
}

/// Bit reported for index k after measuring the rotated state in the
/// computational basis: qubit k for k < n, parity of all qubits for k = n.
inline int decoded_bit(const QracInstance& inst, int k, std::uint64_t outcome) {
  inst.require_index(k);
  const int m = inst.num_qubits();
  if (k < inst.n()) return static_cast<int>((outcome >> (m - k)) & 1u);
  return std::popcount(outcome) & 1;
}

inline ordered_json w_decomposition_json(const WDecomposition& w) {
  ordered_json terms = ordered_json::array();
  for (std::size_t j = 0; j < w.words.size(); ++j) {
    terms.push_back({{"j", j + 1}, {"word", w.words[j].str()}, {"coeff", w.coeffs[j]}});
  }
  return {{"k", w.k}, {"terms", terms}};
}

inline ordered_json w_decompositions_json(const QracInstance& inst) {
  ordered_json all = ordered_json::array();
  for (int k = 1; k <= inst.n(); ++k) all.push_back(w_decomposition_json(w_decomposition(inst, k)));
  return {{"schema", "qrac-w-decomposition"},
          {"version", 1},
          {"n", inst.n()},
          {"num_qubits", inst.num_qubits()},
          {"decompositions", all}};
}

}  // namespace qrac
