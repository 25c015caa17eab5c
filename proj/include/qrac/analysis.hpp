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

// Figures of merit for the (n, n-1) code: exact and sampled success
// probability, the classical bound, commutator norms between decoding
// observables, the disturbance split for sequential decoding, and the gap
// n H(p) - 1 to the Holevo bound.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qrac/codebook.hpp"
#include "qrac/decoder.hpp"
#include "qrac/dense.hpp"
#include "qrac/json_io.hpp"
#include "qrac/rng.hpp"

namespace qrac {

/// <psi_x | M_{x_k|k} | psi_x> for every input x (row) and index k (column).
struct SuccessTable {
  int n;
  std::vector<std::vector<double>> terms;  // [x][k - 1]
  double average = 0.0;

  double max_deviation_from_average() const {
    double d = 0.0;
    for (const auto& row : terms)
      for (double t : row) d = std::max(d, std::abs(t - average));
    return d;
  }
};

inline SuccessTable success_probability_table(const QracInstance& inst, int dense_limit = kDefaultDenseLimit) {
  inst.require_dense(dense_limit);
  const int n = inst.n();
  std::vector<PovmPair> povms;
  for (int k = 1; k <= n; ++k) povms.push_back(povm(inst, k, dense_limit));

  SuccessTable t{n, std::vector<std::vector<double>>(inst.num_inputs(), std::vector<double>(n)), 0.0};
  double sum = 0.0;
  for (std::uint64_t v = 0; v < inst.num_inputs(); ++v) {
    const Bits x = inst.input(v);
    const auto psi = encode(x);
    for (int k = 1; k <= n; ++k) {
      const double p = expectation(povms[k - 1].element(x[k]), psi);
      t.terms[v][k - 1] = p;
      sum += p;
    }
  }
  t.average = sum / (static_cast<double>(n) * static_cast<double>(inst.num_inputs()));
  return t;
}

inline double success_probability_exact(const QracInstance& inst, int dense_limit = kDefaultDenseLimit) {
  return success_probability_table(inst, dense_limit).average;
}

/// Binary entropy in bits, with 0 log 0 = 0.
inline double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("binary_entropy: p outside [0, 1]");
  auto term = [](double q) { return q <= 0.0 ? 0.0 : -q * std::log2(q); };
  return term(p) + term(1.0 - p);
}

struct ClosedForms {
  double p_q;
  double p_c;
  double gap;
  double delta_I;
};

inline ClosedForms closed_forms(const QracInstance& inst) {
  const double n = inst.n();
  const double p_q = 0.5 * (1.0 + std::sqrt((n - 1.0) / n));
  const double p_c = (n - 0.5) / n;
  return {p_q, p_c, p_q - p_c, n * binary_entropy(p_q) - 1.0};
}

/// 1/2 + 1/2 sqrt(m / n) with m = n - 1 qubits.
inline double conjectured_bound(int n) { return 0.5 + 0.5 * std::sqrt(static_cast<double>(n - 1) / n); }

/// 1/2 + 1/2 sqrt(2^(m-1) / n) with m = n - 1 qubits. Exceeds 1 for n >= 5.
inline double loose_bound(int n) { return 0.5 + 0.5 * std::sqrt(std::ldexp(1.0, n - 2) / n); }

inline DenseOperator observable_dense(const QracInstance& inst, int k, int dense_limit = kDefaultDenseLimit) {
  inst.require_dense(dense_limit);
  return to_dense(observable_explicit(inst, k), dense_limit);
}

inline double commutator_norm(const QracInstance& inst, int k, int l, int dense_limit = kDefaultDenseLimit) {
  inst.require_index(k);
  inst.require_index(l);
  if (k == l) throw std::invalid_argument("commutator_norm: k and l must differ");
  const auto ok = observable_dense(inst, k, dense_limit);
  const auto ol = observable_dense(inst, l, dense_limit);
  return operator_norm(ok * ol - ol * ok);
}

/// All pairs k < l.
inline std::map<std::pair<int, int>, double> commutator_norms(const QracInstance& inst,
                                                               int dense_limit = kDefaultDenseLimit) {
  inst.require_dense(dense_limit);
  std::vector<DenseOperator> obs;
  for (int k = 1; k <= inst.n(); ++k) obs.push_back(observable_dense(inst, k, dense_limit));
  std::map<std::pair<int, int>, double> out;
  for (int k = 1; k <= inst.n(); ++k)
    for (int l = k + 1; l <= inst.n(); ++l) {
      const auto& a = obs[k - 1];
      const auto& b = obs[l - 1];
      out[{k, l}] = operator_norm(a * b - b * a);
    }
  return out;
}

/// Change of <O_2> after a successful projective readout of bit 1:
///   <O_2>_post - <O_2>_initial = (<D>_post - <D>_initial) - <V>_initial
/// with P = M_{x_1|1}, Q = I - P, D = POP + QOQ, V = POQ + QOP, O = O_2.
struct Disturbance {
  double term_i = 0.0;   // mean over inputs of |<D>_post - <D>_initial|
  double term_ii = 0.0;  // mean over inputs of |<V>_initial|
  double commutator_bound = 0.0;
  double term_i_max = 0.0;
  double term_ii_max = 0.0;
  double max_post_norm_defect = 0.0;
};

inline Disturbance disturbance(const QracInstance& inst, int dense_limit = kDefaultDenseLimit) {
  inst.require_dense(dense_limit);
  const auto pv = povm(inst, 1, dense_limit);
  const auto o2 = observable_dense(inst, 2, dense_limit);
  const auto o1 = observable_dense(inst, 1, dense_limit);
  const auto id = DenseOperator::identity(inst.dim());

  Disturbance out;
  out.commutator_bound = 0.5 * operator_norm(o1 * o2 - o2 * o1);

  // D and V depend only on x_1.
  DenseOperator d_op[2] = {DenseOperator(inst.dim()), DenseOperator(inst.dim())};
  DenseOperator v_op[2] = {DenseOperator(inst.dim()), DenseOperator(inst.dim())};
  for (int b = 0; b < 2; ++b) {
    const auto& p = pv.element(b);
    const auto q = id - p;
    d_op[b] = p * o2 * p + q * o2 * q;
    v_op[b] = p * o2 * q + q * o2 * p;
  }

  for (std::uint64_t v = 0; v < inst.num_inputs(); ++v) {
    const Bits x = inst.input(v);
    const int b = x[1];
    const auto psi = encode(x);
    auto post = pv.element(b).apply(psi);
    const double norm = post.norm();
    post = post.scaled(1.0 / norm);
    out.max_post_norm_defect = std::max(out.max_post_norm_defect, std::abs(post.norm() - 1.0));

    const double ti = std::abs(expectation(d_op[b], post) - expectation(d_op[b], psi));
    const double tii = std::abs(expectation(v_op[b], psi));
    if (tii > out.commutator_bound + tol::kVerify) {
      throw std::runtime_error("disturbance: off-diagonal term " + format_double(tii) + " exceeds half the commutator norm " +
                               format_double(out.commutator_bound) + " for input " + x.str());
    }
    out.term_i += ti;
    out.term_ii += tii;
    out.term_i_max = std::max(out.term_i_max, ti);
    out.term_ii_max = std::max(out.term_ii_max, tii);
  }
  out.term_i /= static_cast<double>(inst.num_inputs());
  out.term_ii /= static_cast<double>(inst.num_inputs());
  return out;
}

struct ShotResult {
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  double noise = 0.0;
  std::uint64_t successes = 0;
  double empirical_p = 0.0;
  double std_error = 0.0;
};

inline constexpr std::uint64_t kShotChunk = 65536;

/// Monte Carlo estimate of the average success probability.
///
/// Shots are cut into chunks of kShotChunk; chunk c draws from
/// SplitMix64(derive_seed(seed, c)). Each shot takes x = below(2^n), then
/// k = 1 + below(n), then succeeds when uniform() < p(x, k). With depolarizing
/// rate r the state is (1 - r) psi + r I / d, so p becomes
/// (1 - r) p + r tr(M) / d. Success counts are integers summed per chunk, so
/// the result does not depend on the number of worker threads.
inline ShotResult simulate_shots(const QracInstance& inst, std::uint64_t shots, std::uint64_t seed, double noise = 0.0,
                                 int dense_limit = kDefaultDenseLimit, unsigned workers = 0) {
  if (shots < 1) throw std::invalid_argument("simulate_shots: shots must be at least 1");
  if (!(noise >= 0.0 && noise < 1.0)) throw std::invalid_argument("simulate_shots: noise rate must lie in [0, 1)");
  inst.require_dense(dense_limit);
  const int n = inst.n();

  std::vector<double> table(inst.num_inputs() * static_cast<std::size_t>(n));
  {
    std::vector<PovmPair> povms;
    for (int k = 1; k <= n; ++k) povms.push_back(povm(inst, k, dense_limit));
    const double d = static_cast<double>(inst.dim());
    for (std::uint64_t v = 0; v < inst.num_inputs(); ++v) {
      const Bits x = inst.input(v);
      const auto psi = encode(x);
      for (int k = 1; k <= n; ++k) {
        const auto& m = povms[k - 1].element(x[k]);
        const double p = expectation(m, psi);
        table[v * n + (k - 1)] = (1.0 - noise) * p + noise * m.trace().real() / d;
      }
    }
  }

  const std::uint64_t chunks = (shots + kShotChunk - 1) / kShotChunk;
  std::vector<std::uint64_t> hits(chunks, 0);
  auto run_chunk = [&](std::uint64_t c) {
    SplitMix64 rng(derive_seed(seed, c));
    const std::uint64_t begin = c * kShotChunk;
    const std::uint64_t end = std::min(shots, begin + kShotChunk);
    std::uint64_t h = 0;
    for (std::uint64_t s = begin; s < end; ++s) {
      const std::uint64_t x = rng.below(inst.num_inputs());
      const std::uint64_t k = rng.below(static_cast<std::uint64_t>(n));
      h += rng.uniform() < table[x * n + k];
    }
    hits[c] = h;
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t c = next++; c < chunks; c = next++) run_chunk(c);
      });
    }
    for (auto& t : pool) t.join();
  }

  ShotResult r{shots, seed, noise, 0, 0.0, 0.0};
  for (auto h : hits) r.successes += h;
  r.empirical_p = static_cast<double>(r.successes) / static_cast<double>(shots);
  r.std_error = std::sqrt(r.empirical_p * (1.0 - r.empirical_p) / static_cast<double>(shots));
  return r;
}

struct Report {
  int n = 0;
  double p_quantum_exact = 0.0;
  double p_quantum_closed = 0.0;
  double p_classical = 0.0;
  double gap = 0.0;
  std::map<std::pair<int, int>, double> commutator_norms;
  double delta_I = 0.0;
  Disturbance disturbance;
  std::optional<ShotResult> shots;
  double p_conjectured_bound = 0.0;
  double p_loose_bound = 0.0;

  double max_commutator_norm() const {
    double m = 0.0;
    for (const auto& [kl, v] : commutator_norms) m = std::max(m, v);
    return m;
  }
};

struct ShotOptions {
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  double noise = 0.0;
};

inline Report make_report(int n, int dense_limit = kDefaultDenseLimit, std::optional<ShotOptions> shots = std::nullopt) {
  const QracInstance inst(n);
  inst.require_dense(dense_limit);
  const auto cf = closed_forms(inst);
  Report r;
  r.n = n;
  r.p_quantum_exact = success_probability_exact(inst, dense_limit);
  r.p_quantum_closed = cf.p_q;
  r.p_classical = cf.p_c;
  r.gap = cf.gap;
  r.commutator_norms = commutator_norms(inst, dense_limit);
  r.delta_I = cf.delta_I;
  r.disturbance = disturbance(inst, dense_limit);
  if (shots) r.shots = simulate_shots(inst, shots->shots, shots->seed, shots->noise, dense_limit);
  r.p_conjectured_bound = conjectured_bound(n);
  r.p_loose_bound = loose_bound(n);
  if (std::abs(r.p_quantum_exact - r.p_quantum_closed) > tol::kVerify) {
    throw std::runtime_error("make_report: exact and closed-form success probabilities disagree for n = " +
                             std::to_string(n));
  }
  return r;
}

inline std::vector<Report> make_reports(const std::vector<int>& ns, int dense_limit = kDefaultDenseLimit,
                                        std::optional<ShotOptions> shots = std::nullopt) {
  std::vector<Report> out;
  for (int n : ns) out.push_back(make_report(n, dense_limit, shots));
  return out;
}

inline ordered_json report_json(const Report& r) {
  ordered_json norms = ordered_json::object();
  for (const auto& [kl, v] : r.commutator_norms) norms[std::to_string(kl.first) + "," + std::to_string(kl.second)] = v;
  ordered_json j = {{"n", r.n},
                    {"p_quantum_exact", r.p_quantum_exact},
                    {"p_quantum_closed", r.p_quantum_closed},
                    {"p_classical", r.p_classical},
                    {"gap", r.gap},
                    {"commutator_norms", norms},
                    {"delta_I", r.delta_I},
                    {"disturbance",
                     {{"term_i", r.disturbance.term_i},
                      {"term_ii", r.disturbance.term_ii},
                      {"commutator_bound", r.disturbance.commutator_bound},
                      {"term_i_max", r.disturbance.term_i_max},
                      {"term_ii_max", r.disturbance.term_ii_max}}}};
  if (r.shots) {
    j["shots"] = {{"count", r.shots->count},
                  {"seed", r.shots->seed},
                  {"noise", r.shots->noise},
                  {"empirical_p", r.shots->empirical_p},
                  {"std_error", r.shots->std_error}};
  } else {
    j["shots"] = nullptr;
  }
  j["reference_curves"] = {{"p_conjectured_bound", r.p_conjectured_bound}, {"p_loose_bound", r.p_loose_bound}};
  return j;
}

inline ordered_json reports_json(const std::vector<Report>& reports) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : reports) rows.push_back(report_json(r));
  return {{"schema", "qrac-report"}, {"version", 1}, {"reports", rows}};
}

inline std::string reports_csv(const std::vector<Report>& reports) {
  std::string out =
      "n,p_quantum_exact,p_quantum_closed,p_classical,gap,delta_I,max_commutator_norm,term_i,term_ii,"
      "commutator_bound,term_i_max,term_ii_max,p_conjectured_bound,p_loose_bound,shots,seed,noise,empirical_p,"
      "std_error\n";
  for (const auto& r : reports) {
    const auto& d = r.disturbance;
    out += std::to_string(r.n);
    for (double v : {r.p_quantum_exact, r.p_quantum_closed, r.p_classical, r.gap, r.delta_I, r.max_commutator_norm(),
                     d.term_i, d.term_ii, d.commutator_bound, d.term_i_max, d.term_ii_max, r.p_conjectured_bound,
                     r.p_loose_bound}) {
      out += ',';
      out += format_double(v);
    }
    if (r.shots) {
      out += ',' + std::to_string(r.shots->count) + ',' + std::to_string(r.shots->seed) + ',' +
             format_double(r.shots->noise) + ',' + format_double(r.shots->empirical_p) + ',' +
             format_double(r.shots->std_error);
    } else {
      out += ",,,,,";
    }
    out += '\n';
  }
  return out;
}

}  // namespace qrac
