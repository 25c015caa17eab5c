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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "qrac/analysis.hpp"

namespace qrac {
namespace {

// n H(p_q) - 1, evaluated independently in extended precision.
constexpr double kDeltaI[] = {0.20175207338571233, 0.326869776240474,  0.41831561066108014, 0.4905875669728186,
                              0.5504196503920094,  0.6015076145568679, 0.6461044342055233};

TEST(SuccessProbability, BruteForceValues) {
  EXPECT_NEAR(success_probability_exact(QracInstance(2)), 0.8535533906, 1e-10);
  EXPECT_NEAR(success_probability_exact(QracInstance(2)), 0.5 + 0.5 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(success_probability_exact(QracInstance(3)), 0.9082482905, 1e-10);
}

TEST(SuccessProbability, EveryTermEqualsAverage) {
  for (int n = 2; n <= 7; ++n) {
    const auto t = success_probability_table(QracInstance(n));
    EXPECT_LT(t.max_deviation_from_average(), 1e-10);
    EXPECT_NEAR(t.average, closed_forms(QracInstance(n)).p_q, 1e-9);
  }
}

TEST(SuccessProbability, RespectsDenseLimit) {
  EXPECT_THROW(success_probability_exact(QracInstance(5), 4), std::length_error);
}

TEST(ClosedForms, ThreeBits) {
  const auto cf = closed_forms(QracInstance(3));
  EXPECT_NEAR(cf.p_q, 0.9082482905, 1e-10);
  EXPECT_DOUBLE_EQ(cf.p_c, 5.0 / 6.0);
  EXPECT_NEAR(cf.gap, 0.0749150, 1e-7);
  EXPECT_DOUBLE_EQ(closed_forms(QracInstance(2)).p_c, 0.75);
}

TEST(ClosedForms, HolevoGapTable) {
  for (int n = 2; n <= 8; ++n) {
    const auto cf = closed_forms(QracInstance(n));
    EXPECT_NEAR(cf.delta_I, kDeltaI[n - 2], 1e-12) << n;
    EXPECT_NEAR(cf.delta_I, n * binary_entropy(cf.p_q) - 1.0, 1e-15);
    EXPECT_GT(cf.gap, 0.0);
  }
}

TEST(BinaryEntropy, Endpoints) {
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
  EXPECT_THROW(binary_entropy(1.5), std::invalid_argument);
}

TEST(ReferenceCurves, Values) {
  EXPECT_DOUBLE_EQ(conjectured_bound(3), closed_forms(QracInstance(3)).p_q);
  EXPECT_DOUBLE_EQ(loose_bound(2), 0.5 + 0.5 * std::sqrt(0.5));
}

TEST(CommutatorNorm, TwoOverNMinusOne) {
  EXPECT_NEAR(commutator_norm(QracInstance(2), 1, 2), 2.0, 1e-12);
  for (int n = 3; n <= 7; ++n) {
    const auto norms = commutator_norms(QracInstance(n));
    EXPECT_EQ(norms.size(), static_cast<std::size_t>(n * (n - 1) / 2));
    for (const auto& [kl, v] : norms) EXPECT_NEAR(v, 2.0 / (n - 1), 1e-10) << n << " " << kl.first << kl.second;
  }
  EXPECT_THROW(commutator_norm(QracInstance(3), 2, 2), std::invalid_argument);
}

TEST(Disturbance, BoundHoldsAndTwoBitBound) {
  EXPECT_NEAR(disturbance(QracInstance(2)).commutator_bound, 1.0, 1e-12);
  for (int n = 3; n <= 7; ++n) {
    const auto d = disturbance(QracInstance(n));
    EXPECT_LE(d.term_ii_max, d.commutator_bound + 1e-9);
    EXPECT_LE(d.term_ii, d.term_ii_max);
    EXPECT_LE(d.term_i, d.term_i_max);
    EXPECT_LT(d.max_post_norm_defect, 1e-12);
  }
}

TEST(Shots, ThreeBitsWithinThreeStandardErrors) {
  const auto r = simulate_shots(QracInstance(3), 1000000, 2026);
  EXPECT_NEAR(r.std_error, 0.00029, 0.00002);
  EXPECT_LT(std::abs(r.empirical_p - 0.9082482905), 3.0 * r.std_error);
}

TEST(Shots, DeterministicAcrossRunsAndWorkerCounts) {
  const QracInstance q(4);
  const auto a = simulate_shots(q, 300000, 99, 0.1, kDefaultDenseLimit, 1);
  const auto b = simulate_shots(q, 300000, 99, 0.1, kDefaultDenseLimit, 1);
  const auto c = simulate_shots(q, 300000, 99, 0.1, kDefaultDenseLimit, 3);
  EXPECT_EQ(a.successes, b.successes);
  EXPECT_EQ(a.successes, c.successes);
  EXPECT_EQ(a.empirical_p, c.empirical_p);
  EXPECT_NE(simulate_shots(q, 300000, 100, 0.1).successes, a.successes);
}

TEST(Shots, FrozenRegressionValue) {
  // Pins the generator, chunking and draw order.
  EXPECT_EQ(simulate_shots(QracInstance(3), 100000, 7).successes, 90862u);
}

TEST(Shots, NoiseHandling) {
  const QracInstance q(3);
  EXPECT_THROW(simulate_shots(q, 10, 1, 1.0), std::invalid_argument);
  EXPECT_THROW(simulate_shots(q, 10, 1, -0.1), std::invalid_argument);
  EXPECT_THROW(simulate_shots(q, 0, 1), std::invalid_argument);
  const auto r = simulate_shots(q, 200000, 5, 0.999);
  EXPECT_NEAR(r.empirical_p, 0.5, 0.01);
}

TEST(Report, RowsAndSerialization) {
  const auto reports = make_reports({2, 3, 4}, kDefaultDenseLimit, ShotOptions{1000, 1, 0.0});
  ASSERT_EQ(reports.size(), 3u);
  EXPECT_NEAR(reports[1].p_quantum_exact, reports[1].p_quantum_closed, 1e-9);
  const auto j = reports_json(reports);
  EXPECT_EQ(j["schema"], "qrac-report");
  const auto& row = j["reports"][1];
  for (const char* key : {"n", "p_quantum_exact", "p_quantum_closed", "p_classical", "gap", "commutator_norms",
                          "delta_I", "disturbance", "shots"}) {
    EXPECT_TRUE(row.contains(key)) << key;
  }
  EXPECT_TRUE(row["commutator_norms"].contains("1,2"));
  EXPECT_EQ(row["shots"]["count"], 1000);
  const auto csv = reports_csv(reports);
  std::istringstream in(csv);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 4);
  EXPECT_EQ(csv.rfind("n,p_quantum_exact,", 0), 0u);
}

TEST(Report, TrendsOverThreeToEight) {
  const auto reports = make_reports({3, 4, 5, 6, 7, 8});
  for (std::size_t i = 1; i < reports.size(); ++i) {
    EXPECT_LE(reports[i].max_commutator_norm(), reports[i - 1].max_commutator_norm());
    EXPECT_GT(reports[i].delta_I, reports[i - 1].delta_I);
  }
}

}  // namespace
}  // namespace qrac
