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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qrac/qrac.hpp"

namespace {

using qrac::CheckResult;
using qrac::QracInstance;

struct Outcome {
  bool pass = true;
  std::string note;

  void fail(const std::string& why) {
    if (pass) note = why;
    pass = false;
  }
  void absorb(int n, const CheckResult& r) {
    if (r.status != qrac::CheckStatus::Pass) fail("n=" + std::to_string(n) + " " + r.name + ": " + r.detail);
  }
};

Outcome sweep(int lo, int hi, const std::function<CheckResult(int)>& check) {
  Outcome o;
  for (int n = lo; n <= hi; ++n) o.absorb(n, check(n));
  return o;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome criterion_1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (int n = 2; n <= 8; ++n) {
    const QracInstance q(n);
    const double p = qrac::success_probability_exact(q);
    const double want = 0.5 * (1.0 + std::sqrt((n - 1.0) / n));
    if (!(std::abs(p - want) <= 1e-9)) o.fail("n=" + std::to_string(n) + " p=" + qrac::format_double(p));
    if (n == 3 && !(std::abs(p - 0.9082482905) <= 1e-10)) o.fail("n=3 reference value");
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 30.0) o.fail("runtime " + qrac::format_double(elapsed) + " s");
  o.note += (o.note.empty() ? "" : "; ") + std::string("runtime ") + std::to_string(elapsed) + " s";
  return o;
}

Outcome criterion_7() {
  Outcome o = sweep(2, 7, [](int n) { return qrac::check_observable_equivalence(n); });
  const Outcome w = sweep(2, 8, [](int n) { return qrac::check_w_decomposition(n); });
  if (!w.pass) o.fail(w.note);
  return o;
}

Outcome criterion_10() {
  Outcome o = sweep(2, 7, [](int n) { return qrac::check_encoding_circuit(n); });
  const Outcome c = sweep(2, 12, [](int n) { return qrac::check_displacement_covariance(n); });
  if (!c.pass) o.fail(c.note);
  return o;
}

Outcome criterion_11() {
  Outcome o;
  const QracInstance q(3);
  const std::uint64_t shots = 1000000;
  const std::uint64_t seed = 2026;
  const auto a = qrac::simulate_shots(q, shots, seed);
  const auto b = qrac::simulate_shots(q, shots, seed);
  const auto c = qrac::simulate_shots(q, shots, seed, 0.0, qrac::kDefaultDenseLimit, 1);
  const double z = (a.empirical_p - 0.9082482905) / a.std_error;
  if (!(std::abs(z) <= 3.0)) o.fail("z = " + qrac::format_double(z));
  if (a.successes != b.successes || a.successes != c.successes) o.fail("nondeterministic");
  o.note += (o.note.empty() ? "" : "; ") + std::string("empirical_p=") + qrac::format_double(a.empirical_p) +
            " std_error=" + qrac::format_double(a.std_error);
  return o;
}

Outcome criterion_12() {
  Outcome o;
  for (int n = 2; n <= 8; ++n) {
    const auto cf = qrac::closed_forms(QracInstance(n));
    if (cf.p_c != (n - 0.5) / n) o.fail("p_c n=" + std::to_string(n));
    if (!(cf.gap > 0.0)) o.fail("gap n=" + std::to_string(n));
    if (!(std::abs(cf.delta_I - (n * qrac::binary_entropy(cf.p_q) - 1.0)) <= 1e-9)) o.fail("delta_I");
  }
  const auto c3 = qrac::closed_forms(QracInstance(3));
  if (!(std::abs(c3.p_c - 0.8333333) <= 1e-7 && std::abs(c3.gap - 0.0749150) <= 1e-7)) o.fail("n=3 values");
  const auto reports = qrac::make_reports({3, 4, 5, 6, 7, 8});
  for (std::size_t i = 1; i < reports.size(); ++i) {
    if (!(reports[i].max_commutator_norm() <= reports[i - 1].max_commutator_norm())) {
      o.fail("commutator norm rises at n=" + std::to_string(reports[i].n));
    }
    if (!(reports[i].delta_I > reports[i - 1].delta_I)) o.fail("delta_I not increasing at n=" + std::to_string(reports[i].n));
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"average success probability equals the closed form, n = 2..8", criterion_1},
      {"A_n entries, adjacency pattern and A_n^2 = n I, n <= 12",
       [] { return sweep(2, 12, [](int n) { return qrac::check_a_matrix(n); }); }},
      {"odd encodings orthonormal within 1e-12, n <= 8",
       [] { return sweep(2, 8, [](int n) { return qrac::check_encoding_orthonormality(n); }); }},
      {"PQP = mu P and QPQ = mu Q, n <= 7",
       [] { return sweep(2, 7, [](int n) { return qrac::check_projector_algebra(n); }); }},
      {"spectrum of S_{k,b} is {1 +- sqrt(mu)} with equal multiplicity, n <= 7",
       [] { return sweep(2, 7, [](int n) { return qrac::check_projector_spectrum(n); }); }},
      {"POVM completeness, positivity, idempotence, n <= 7",
       [] { return sweep(2, 7, [](int n) { return qrac::check_povm_validity(n); }); }},
      {"M_0 - M_1 equals the Pauli form (n <= 7); decomposition laws (n <= 8)", criterion_7},
      {"symbolic rotation cascade leaves exactly E_k, n <= 16",
       [] { return sweep(2, 16, [](int n) { return qrac::check_symbolic_cascade(n); }); }},
      {"lowered decoding circuit diagonalizes O_k; CNOT count <= 2(n-1), n <= 6",
       [] { return sweep(2, 6, [](int n) { return qrac::check_decoding_circuit(n); }); }},
      {"encoding circuit output and sign (n <= 7); displacement covariance (n <= 12)", criterion_10},
      {"n = 3, 10^6 shots: within 3 standard errors and deterministic", criterion_11},
      {"report math and trends over n = 3..8", criterion_12},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::printf("%s criterion %zu: %s [%.2f s]%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].title,
                seconds_since(t0), o.note.empty() ? "" : " -- ", o.note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
