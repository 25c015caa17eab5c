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

// Named end-to-end checks for a single n. Each check reports the worst
// deviation it saw; exceptions thrown by the library become failures.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qrac/analysis.hpp"
#include "qrac/circuit.hpp"
#include "qrac/codebook.hpp"
#include "qrac/decoder.hpp"
#include "qrac/dense.hpp"
#include "qrac/json_io.hpp"
#include "qrac/pauli.hpp"

namespace qrac {

enum class CheckStatus { Pass, Fail, Skip };

inline const char* status_text(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "PASS";
    case CheckStatus::Fail:
      return "FAIL";
    case CheckStatus::Skip:
      return "SKIP";
  }
  return "?";
}

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  double worst = 0.0;  // largest deviation observed, 0 when not meaningful
  std::string detail;

  bool ok() const { return status != CheckStatus::Fail; }
};

namespace detail {

/// Accumulates a worst-case deviation against a tolerance.
struct Tally {
  double worst = 0.0;
  bool failed = false;
  std::string first_failure;

  void observe(double deviation, double tolerance, const std::string& where) {
    worst = std::max(worst, deviation);
    if (!(deviation <= tolerance) && !failed) {
      failed = true;
      first_failure = where + ": deviation " + format_double(deviation) + " > " + format_double(tolerance);
    }
  }
  void require(bool cond, const std::string& where) {
    if (!cond && !failed) {
      failed = true;
      first_failure = where;
    }
  }
};

inline CheckResult finish(std::string name, const Tally& t) {
  return {std::move(name), t.failed ? CheckStatus::Fail : CheckStatus::Pass, t.worst, t.first_failure};
}

inline CheckResult guarded(const std::string& name, const std::function<CheckResult()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {name, CheckStatus::Fail, 0.0, std::string("exception: ") + e.what()};
  }
}

inline std::string kb(int k, int b) { return "k=" + std::to_string(k) + " b=" + std::to_string(b); }

}  // namespace detail

/// Entries in {0, +-1} exactly on Hamming-distance-1 pairs and A_n^2 = n I,
/// in integer arithmetic. All-pairs pattern scan for n <= 12; dense
/// cross-check for n <= 6.
inline CheckResult check_a_matrix(int n, int dense_limit = kDefaultDenseLimit) {
  return detail::guarded("a_matrix_laws", [&] {
    detail::Tally t;
    const std::uint64_t size = std::uint64_t{1} << n;
    if (n <= 12) {
      for (std::uint64_t y = 0; y < size; ++y)
        for (std::uint64_t x = 0; x < size; ++x) {
          const int a = a_entry(Bits(n, y), Bits(n, x));
          const bool adjacent = std::popcount(x ^ y) == 1;
          if (!(adjacent ? (a == 1 || a == -1) : a == 0)) t.require(false, "entry pattern at y=" + Bits(n, y).str());
        }
    }
    // (A^2)_{yx} = sum over two flips l1, l2 of a(y, z) a(z, x).
    for (std::uint64_t y = 0; y < size; ++y) {
      std::int64_t diag = 0;
      std::vector<std::pair<std::uint64_t, std::int64_t>> off;
      const Bits yb(n, y);
      for (int l1 = 1; l1 <= n; ++l1) {
        const Bits z = yb.flipped(l1);
        const int a1 = a_entry(yb, z);
        for (int l2 = 1; l2 <= n; ++l2) {
          const Bits x = z.flipped(l2);
          const std::int64_t prod = a1 * a_entry(z, x);
          if (x == yb) {
            diag += prod;
          } else {
            auto it = std::find_if(off.begin(), off.end(), [&](const auto& p) { return p.first == x.value(); });
            if (it == off.end()) {
              off.emplace_back(x.value(), prod);
            } else {
              it->second += prod;
            }
          }
        }
      }
      t.require(diag == n, "A^2 diagonal at y=" + yb.str());
      for (const auto& [x, v] : off) t.require(v == 0, "A^2 off-diagonal at y=" + yb.str());
    }
    if (n <= std::min(6, dense_limit)) {
      const auto a = to_dense(a_pauli(n), dense_limit);
      const auto sq = a * a;
      t.observe(sq.max_abs_diff(static_cast<double>(n) * DenseOperator::identity(a.dim())), 0.0, "dense A^2");
      double worst_entry = 0.0;
      for (std::uint64_t y = 0; y < size; ++y)
        for (std::uint64_t x = 0; x < size; ++x)
          worst_entry = std::max(worst_entry, std::abs(a(y, x) - cplx(a_entry(Bits(n, y), Bits(n, x)))));
      t.observe(worst_entry, 0.0, "dense entry");
    }
    return detail::finish("a_matrix_laws", t);
  });
}

/// Odd states orthonormal within 1e-12; even states are basis vectors.
inline CheckResult check_encoding_orthonormality(int n, int dense_limit = kDefaultDenseLimit) {
  return detail::guarded("encoding_orthonormality", [&] {
    const QracInstance inst(n);
    inst.require_dense(dense_limit);
    detail::Tally t;
    std::vector<StateVector> odd;
    for (std::uint64_t v = 0; v < inst.num_inputs(); ++v) {
      const Bits x = inst.input(v);
      auto psi = encode(x);
      if (x.is_odd()) {
        odd.push_back(std::move(psi));
      } else {
        t.observe(psi.max_abs_diff(StateVector::basis(inst.dim(), even_basis_index(x))), 0.0, "even state " + x.str());
      }
    }
    for (std::size_t i = 0; i < odd.size(); ++i)
      for (std::size_t j = i; j < odd.size(); ++j)
        t.observe(std::abs(odd[i].inner(odd[j]) - cplx(i == j ? 1.0 : 0.0)), 1e-12, "odd pair");
    return detail::finish("encoding_orthonormality", t);
  });
}

/// global_sign * Z(v') X(u) psi_ref reproduces encode(y) for every odd y.
inline CheckResult check_displacement_encoding(int n, int dense_limit = kDefaultDenseLimit) {
  return detail::guarded("displacement_encoding", [&] {
    const QracInstance inst(n);
    inst.require_dense(dense_limit);
    detail::Tally t;
    const auto ref = reference_state(n);
    t.observe(ref.max_abs_diff(encode(reference_input(n))), 1e-12, "reference state");
    for (std::uint64_t v = 0; v < inst.num_inputs(); ++v) {
      const Bits y = inst.input(v);
      if (!y.is_odd()) continue;
      t.observe(apply_displacement(displacement(y), ref).max_abs_diff(encode(y)), 1e-12, "y=" + y.str());
    }
    return detail::finish("displacement_encoding", t);
  });
}

/// D(u, v) A_n D(u, v)^dagger = A_n as Pauli sums, exactly.
inline CheckResult check_displacement_covariance(int n) {
  return detail::guarded("displacement_covariance", [&] {
    const QracInstance inst(n);
    detail::Tally t;
    const auto a = a_pauli(n);
    for (std::uint64_t v = 0; v < inst.num_inputs(); ++v) {
      const Bits y = inst.input(v);
      if (!y.is_odd()) continue;
      const auto d = displacement(y);
      t.observe(l1_distance(conjugate_by_pauli(a, displacement_word(d)), a), 0.0, "y=" + y.str());
      t.require(d.global_sign == (dot(d.v, y) ? -1 : 1), "global sign y=" + y.str());
    }
    return detail::finish("displacement_covariance", t);
  });
}

/// P Q P = mu P and Q P Q = mu Q with P, Q the odd and even projectors.
inline CheckResult check_projector_algebra(int n, int dense_limit = kDefaultDenseLimit) {
  return detail::guarded("projector_algebra", [&] {
    const QracInstance inst(n);
    detail::Tally t;
    const double mu = overlap_mu(n);
    for (int k = 1; k <= n; ++k)
      for (int b = 0; b < 2; ++b) {
        const auto p = parity_projector(inst, k, b, Parity::Odd, dense_limit);
        const auto q = parity_projector(inst, k, b, Parity::Even, dense_limit);
        t.observe((p * q * p).max_abs_diff(mu * p), tol::kProjector, "PQP " + detail::kb(k, b));
        t.observe((q * p * q).max_abs_diff(mu * q), tol::kProjector, "QPQ " + detail::kb(k, b));
        t.observe(std::abs(p.trace() - cplx(static_cast<double>(inst.dim() / 2))), 1e-12, "rank " + detail::kb(k, b));
      }
    return detail::finish("projector_algebra", t);
  });
}

/// Spectrum of S_{k,b} is {1 - sqrt(mu), 1 + sqrt(mu)}, 2^{n-2} each.
inline CheckResult check_projector_spectrum(int n, int dense_limit = kDefaultDenseLimit) {
  return detail::guarded("projector_spectrum", [&] {
    const QracInstance inst(n);
    detail::Tally t;
    const double r = std::sqrt(overlap_mu(n));
    const std::size_t half = inst.dim() / 2;
    for (int k = 1; k <= n; ++k)
      for (int b = 0; b < 2; ++b) {
        const auto s = projector_sum(inst, k, b, dense_limit);
        const auto e = hermitian_eigen(s);
        std::size_t low = 0;
        std::size_t high = 0;
        for (double lam : e.values) {
          const double dl = std::abs(lam - (1.0 - r));
          const double dh = std::abs(lam - (1.0 + r));
          t.observe(std::min(dl, dh), tol::kVerify, "eigenvalue " + detail::kb(k, b));
          low += dl <= tol::kVerify;
          high += dh <= tol::kVerify;
        }
        t.require(low == half && high == half, "multiplicity " + detail::kb(k, b));
      }
    return detail::finish("projector_spectrum", t);
  });
}

/// Completeness, positivity and idempotence of each POVM pair.
inline CheckResult check_povm_validity(int n, int dense_limit = kDefaultDenseLimit) {
  return detail::guarded("povm_validity", [&] {
    const QracInstance inst(n);
    detail::Tally t;
    const auto id = DenseOperator::identity(inst.dim());
    for (int k = 1; k <= n; ++k) {
      const auto p = povm(inst, k, dense_limit);
      t.observe((p.m0 + p.m1).max_abs_diff(id), tol::kProjector, "completeness k=" + std::to_string(k));
      for (int b = 0; b < 2; ++b) {
        const auto& m = p.element(b);
        t.observe(m.max_abs_diff(m * m), tol::kVerify, "idempotence " + detail::kb(k, b));
        const auto e = hermitian_eigen(m);
        t.require(e.values.front() >= -tol::kProjector, "positivity " + detail::kb(k, b));
        t.require(e.values.back() <= 1.0 + tol::kProjector, "upper bound " + detail::kb(k, b));
      }
    }
    return detail::finish("povm_validity", t);
  });
}

/// M_0 - M_1 equals the Pauli form of O_k, and O_k^2 = I.
inline CheckResult check_observable_equivalence(int n, int dense_limit = kDefaultDenseLimit) {
  return detail::guarded("observable_equivalence", [&] {
    const QracInstance inst(n);
    detail::Tally t;
    const auto id = DenseOperator::identity(inst.dim());
    for (int k = 1; k <= n; ++k) {
      const auto p = povm(inst, k, dense_limit);
      const auto o = p.m0 - p.m1;
      const auto expl = to_dense(observable_explicit(inst, k), dense_limit);
      t.observe(o.max_abs_diff(expl), tol::kVerify, "k=" + std::to_string(k));
      t.observe((expl * expl).max_abs_diff(id), tol::kVerify, "O^2 k=" + std::to_string(k));
    }
    return detail::finish("observable_equivalence", t);
  });
}

/// n words, sum c^2 = 1, pairwise anticommuting, sum c_j W_j = O_k.
inline CheckResult check_w_decomposition(int n) {
  return detail::guarded("w_decomposition", [&] {
    const QracInstance inst(n);
    detail::Tally t;
    for (int k = 1; k <= n; ++k) {
      const auto w = w_decomposition(inst, k);
      const std::string at = "k=" + std::to_string(k);
      t.require(static_cast<int>(w.words.size()) == n, "word count " + at);
      double s = 0.0;
      for (double c : w.coeffs) s += c * c;
      t.observe(std::abs(s - 1.0), 1e-12, "sum c^2 " + at);
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) t.require(!commutes(w.word(i), w.word(j)), "anticommutation " + at);
      const auto expl = observable_explicit(inst, k);
      t.require(static_cast<int>(expl.size()) == n, "explicit term count " + at);
      t.observe(l1_distance(w.sum(), expl), 1e-12, "sum vs explicit " + at);
    }
    return detail::finish("w_decomposition", t);
  });
}

/// Rotation cascade, symbolically: locality, non-interference, per-step
/// left coefficient, and final residual.
inline CheckResult check_symbolic_cascade(int n) {
  return detail::guarded("symbolic_cascade", [&] {
    const QracInstance inst(n);
    detail::Tally t;
    const double eps = epsilon(n);
    for (int k = 1; k <= n; ++k) {
      const auto w = w_decomposition(inst, k);
      const auto steps = diagonalization_rotations(inst, k);
      const std::string at = "k=" + std::to_string(k);
      t.require(static_cast<int>(steps.size()) == n - 1, "step count " + at);
      PauliSum o = observable_explicit(inst, k);
      for (const auto& s : steps) {
        const auto support = s.generator.support();
        t.require(s.generator.weight() <= 2, "weight " + at);
        for (int site : support) t.require(site == s.m || site == s.m + 1, "adjacency " + at);
        if (s.stage == Stage::Left) {
          for (int j = s.m + 2; j <= n; ++j) t.require(commutes(s.generator, w.word(j)), "non-interference " + at);
        }
        o = rotate_conjugate(o, s.generator, s.angle);
        if (s.stage == Stage::Left && s.m < k - 1) {
          t.observe(std::abs(o.coefficient(w.word(s.m + 1)) - std::sqrt(s.m + 1.0) * eps), 1e-12,
                    "left coefficient m=" + std::to_string(s.m) + " " + at);
        }
        if (s.stage == Stage::Left && s.m == k - 1) {
          const double expect = std::sqrt((k - 1) * eps * eps + w.coeff(k) * w.coeff(k));
          t.observe(std::abs(o.coefficient(w.word(k)) - expect), 1e-12, "left stage end " + at);
        }
      }
      t.observe(l1_distance(o, PauliSum::single(diagonal_word(inst, k))), 1e-12, "residual " + at);
    }
    return detail::finish("symbolic_cascade", t);
  });
}

/// Lowered decoding circuit: U O_k U^dagger = E_k densely, gate budgets,
/// two-qubit gates on adjacent wires.
inline CheckResult check_decoding_circuit(int n, int dense_limit = kDefaultDenseLimit) {
  return detail::guarded("decoding_circuit", [&] {
    const QracInstance inst(n);
    inst.require_dense(dense_limit);
    detail::Tally t;
    for (int k = 1; k <= n; ++k) {
      const auto c = decoding_circuit(inst, k);
      const std::string at = "k=" + std::to_string(k);
      t.require(c.cnot_count() <= static_cast<std::size_t>(2 * (n - 1)), "CNOT budget " + at);
      t.require(c.gates.size() <= static_cast<std::size_t>(9 * (n - 1)), "gate budget " + at);
      for (const auto& g : c.gates)
        if (g.kind == GateKind::CNOT) t.require(std::abs(g.controls[0] - g.target) == 1, "adjacency " + at);
      const auto u = circuit_to_unitary(c, dense_limit);
      const auto o = to_dense(observable_explicit(inst, k), dense_limit);
      const auto e = to_dense(diagonal_word(inst, k), dense_limit);
      t.observe((u * o * u.adjoint()).max_abs_diff(e), tol::kVerify, at);
    }
    return detail::finish("decoding_circuit", t);
  });
}

/// Encoding circuits reproduce encode(y) with the predicted global sign;
/// the MCRY expansion gives the same state.
inline CheckResult check_encoding_circuit(int n, int dense_limit = kDefaultDenseLimit) {
  return detail::guarded("encoding_circuit", [&] {
    const QracInstance inst(n);
    inst.require_dense(dense_limit);
    detail::Tally t;
    for (std::uint64_t v = 0; v < inst.num_inputs(); ++v) {
      const Bits y = inst.input(v);
      const auto c = encoding_circuit(y, inst);
      const auto out = simulate(c);
      const auto want = encode(y);
      const std::string at = "y=" + y.str();
      if (!y.is_odd()) {
        t.observe(out.max_abs_diff(want), 0.0, at);
        continue;
      }
      const cplx ov = want.inner(out);
      const int sign = displacement(y).global_sign;
      t.observe(std::abs(1.0 - std::abs(ov)), 1e-10, "overlap " + at);
      t.require((ov.real() > 0 ? 1 : -1) == sign, "global sign " + at);
      t.observe(simulate(expand_mcry(c)).max_abs_diff(out), 1e-10, "expansion " + at);
    }
    return detail::finish("encoding_circuit", t);
  });
}

/// Brute-force success probability equals the closed form, and every
/// (x, k) term equals the average.
inline CheckResult check_success_probability(int n, int dense_limit = kDefaultDenseLimit) {
  return detail::guarded("success_probability", [&] {
    const QracInstance inst(n);
    detail::Tally t;
    const auto table = success_probability_table(inst, dense_limit);
    t.observe(std::abs(table.average - closed_forms(inst).p_q), tol::kVerify, "average");
    t.observe(table.max_deviation_from_average(), 1e-10, "per-term constancy");
    return detail::finish("success_probability", t);
  });
}

/// |<V>| <= ||[O_1, O_2]|| / 2 for every input; post states normalized.
inline CheckResult check_disturbance(int n, int dense_limit = kDefaultDenseLimit) {
  return detail::guarded("disturbance_bound", [&] {
    const QracInstance inst(n);
    detail::Tally t;
    const auto d = disturbance(inst, dense_limit);
    t.observe(d.max_post_norm_defect, 1e-12, "post-measurement normalization");
    t.require(d.term_ii_max <= d.commutator_bound + tol::kVerify, "off-diagonal term above bound");
    return detail::finish("disturbance_bound", t);
  });
}

/// Every check for one n. Dense checks above the dense limit are skipped.
inline std::vector<CheckResult> run_checks(int n, int dense_limit = kDefaultDenseLimit) {
  const QracInstance inst(n);  // validates n
  const bool dense = n <= dense_limit;
  auto dense_only = [&](const char* name, auto&& fn) {
    if (dense) return fn();
    return CheckResult{name, CheckStatus::Skip, 0.0, "n exceeds dense limit " + std::to_string(dense_limit)};
  };
  std::vector<CheckResult> out;
  out.push_back(check_a_matrix(n, dense_limit));
  out.push_back(dense_only("encoding_orthonormality", [&] { return check_encoding_orthonormality(n, dense_limit); }));
  out.push_back(dense_only("displacement_encoding", [&] { return check_displacement_encoding(n, dense_limit); }));
  out.push_back(check_displacement_covariance(n));
  out.push_back(dense_only("projector_algebra", [&] { return check_projector_algebra(n, dense_limit); }));
  out.push_back(dense_only("projector_spectrum", [&] { return check_projector_spectrum(n, dense_limit); }));
  out.push_back(dense_only("povm_validity", [&] { return check_povm_validity(n, dense_limit); }));
  out.push_back(dense_only("observable_equivalence", [&] { return check_observable_equivalence(n, dense_limit); }));
  out.push_back(check_w_decomposition(n));
  out.push_back(check_symbolic_cascade(n));
  out.push_back(dense_only("decoding_circuit", [&] { return check_decoding_circuit(n, dense_limit); }));
  out.push_back(dense_only("encoding_circuit", [&] { return check_encoding_circuit(n, dense_limit); }));
  out.push_back(dense_only("success_probability", [&] { return check_success_probability(n, dense_limit); }));
  out.push_back(dense_only("disturbance_bound", [&] { return check_disturbance(n, dense_limit); }));
  return out;
}

}  // namespace qrac
