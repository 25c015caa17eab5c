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
#include <numbers>
#include <random>

#include "qrac/circuit.hpp"

namespace qrac {
namespace {

constexpr cplx kI(0.0, 1.0);

PauliString w(const char* letters) { return PauliString::from_letters(letters); }

DenseOperator rotation_matrix(const PauliString& g, double theta) {
  const auto id = DenseOperator::identity(std::size_t{1} << g.num_sites());
  return std::cos(theta / 2) * id - kI * std::sin(theta / 2) * to_dense(g);
}

// Controlled RY written out directly: acts on the target only when every
// control wire holds its polarity.
DenseOperator mcry_matrix(int qubits, const std::vector<int>& controls, const std::vector<int>& polarity, int target,
                          double theta) {
  const std::size_t dim = std::size_t{1} << qubits;
  auto bit = [&](std::size_t idx, int wire) { return static_cast<int>((idx >> (qubits - 1 - wire)) & 1u); };
  DenseOperator m(dim);
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  for (std::size_t col = 0; col < dim; ++col) {
    bool active = true;
    for (std::size_t i = 0; i < controls.size(); ++i) active = active && bit(col, controls[i]) == polarity[i];
    if (!active) {
      m(col, col) = 1.0;
      continue;
    }
    const std::size_t flip = col ^ (std::size_t{1} << (qubits - 1 - target));
    if (bit(col, target) == 0) {
      m(col, col) = c;
      m(flip, col) = s;
    } else {
      m(col, col) = c;
      m(flip, col) = -s;
    }
  }
  return m;
}

TEST(Rotations, ThreeBitFirstIndex) {
  const auto steps = diagonalization_rotations(QracInstance(3), 1);
  ASSERT_EQ(steps.size(), 2u);
  EXPECT_EQ(steps[0].generator, w("IY"));
  EXPECT_EQ(steps[0].stage, Stage::Right);
  EXPECT_EQ(steps[0].m, 2);
  EXPECT_NEAR(steps[0].angle, std::numbers::pi / 4, 1e-15);
  EXPECT_EQ(steps[1].generator, w("-YX"));
  EXPECT_EQ(steps[1].m, 1);
  EXPECT_NEAR(steps[1].angle, 0.6154797086703874, 1e-15);
}

TEST(Rotations, TwoBitSingleStep) {
  const QracInstance q(2);
  const auto steps = diagonalization_rotations(q, 1);
  ASSERT_EQ(steps.size(), 1u);
  EXPECT_NEAR(steps[0].angle, std::atan(1.0), 1e-15);
  const auto out = conjugate_through(observable_explicit(q, 1), steps);
  EXPECT_NEAR(out.coefficient(w("Z")), 1.0, 1e-15);
  EXPECT_EQ(out.size(), 1u);
}

TEST(Rotations, LastIndexUsesLeftStepsOnly) {
  for (int n = 2; n <= 9; ++n) {
    const QracInstance q(n);
    const auto steps = diagonalization_rotations(q, n);
    ASSERT_EQ(static_cast<int>(steps.size()), n - 1);
    for (const auto& s : steps) EXPECT_EQ(s.stage, Stage::Left);
    // Coefficient of W_n is 1 after the final left step.
    const auto wd = w_decomposition(q, n);
    EXPECT_NEAR(conjugate_through(observable_explicit(q, n), steps).coefficient(wd.word(n)), 1.0, 1e-12);
  }
}

TEST(Rotations, LocalityAndResidualUpToSixteen) {
  for (int n = 2; n <= 16; ++n) {
    const QracInstance q(n);
    for (int k = 1; k <= n; ++k) {
      const auto steps = diagonalization_rotations(q, k);
      int prev_left = 0;
      bool seen_right = false;
      for (const auto& s : steps) {
        EXPECT_LE(s.generator.weight(), 2);
        for (int site : s.generator.support()) EXPECT_TRUE(site == s.m || site == s.m + 1);
        if (s.stage == Stage::Left) {
          EXPECT_FALSE(seen_right);
          EXPECT_EQ(s.m, prev_left + 1);
          prev_left = s.m;
        } else {
          seen_right = true;
        }
      }
      const auto out = conjugate_through(observable_explicit(q, k), steps);
      EXPECT_LT(l1_distance(out, PauliSum::single(diagonal_word(q, k))), 1e-12) << n << " " << k;
    }
  }
}

TEST(Lowering, WeightOneStep) {
  const auto c = lower_to_gates({{w("IY"), std::numbers::pi / 4, Stage::Right, 2}});
  ASSERT_EQ(c.gates.size(), 1u);
  EXPECT_EQ(c.gates[0].kind, GateKind::RY);
  EXPECT_EQ(c.gates[0].target, 1);
  EXPECT_EQ(c.cnot_count(), 0u);
}

TEST(Lowering, WeightTwoStepAbsorbsSign) {
  const double theta = 0.61548;
  const auto c = lower_to_gates({{w("-YX"), theta, Stage::Right, 1}});
  EXPECT_EQ(c.cnot_count(), 2u);
  EXPECT_EQ(c.count(GateKind::RZ), 1u);
  EXPECT_EQ(c.gates.size(), 9u);
  for (const auto& g : c.gates)
    if (g.kind == GateKind::RZ) {
      EXPECT_DOUBLE_EQ(g.angle, -theta);
    }
  EXPECT_LT(circuit_to_unitary(c).max_abs_diff(rotation_matrix(w("-YX"), theta)), 1e-14);
}

TEST(Lowering, EveryTwoSiteWordMatchesExponential) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  const char letters[] = {'I', 'X', 'Y', 'Z'};
  for (char a : letters)
    for (char b : letters)
      for (int sign : {1, -1}) {
        const std::string s = std::string(sign < 0 ? "-" : "") + a + b + "I";
        const auto g = PauliString::from_letters(s);
        const double theta = angle(rng);
        const auto c = lower_to_gates({{g, theta, Stage::Left, 1}});
        EXPECT_LE(c.cnot_count(), 2u);
        if (g.is_identity()) {
          // Pure global phase; nothing to emit.
          EXPECT_TRUE(c.gates.empty());
          continue;
        }
        EXPECT_LT(circuit_to_unitary(c).max_abs_diff(rotation_matrix(g, theta)), 1e-13) << s;
      }
}

TEST(Lowering, RejectsHeavyGenerator) {
  EXPECT_THROW(lower_to_gates({{w("XYZ"), 0.1, Stage::Left, 1}}), std::invalid_argument);
}

TEST(DecodingCircuit, ThreeBitCounts) {
  const auto c = decoding_circuit(QracInstance(3), 1);
  EXPECT_EQ(c.cnot_count(), 2u);
  EXPECT_EQ(c.info.header(), "n=3 k=1");
}

TEST(DecodingCircuit, DiagonalizesObservable) {
  for (int n = 2; n <= 6; ++n) {
    const QracInstance q(n);
    for (int k = 1; k <= n; ++k) {
      const auto c = decoding_circuit(q, k);
      EXPECT_LE(c.cnot_count(), static_cast<std::size_t>(2 * (n - 1)));
      EXPECT_LE(c.gates.size(), static_cast<std::size_t>(9 * (n - 1)));
      const auto u = circuit_to_unitary(c);
      const auto got = u * to_dense(observable_explicit(q, k)) * u.adjoint();
      EXPECT_LT(got.max_abs_diff(to_dense(diagonal_word(q, k))), 1e-9) << n << " " << k;
    }
  }
}

TEST(DecodingCircuit, RotatedCodewordsDecodeWithConstantProbability) {
  const QracInstance q(4);
  const double want = 0.5 * (1.0 + std::sqrt(overlap_mu(4)));
  for (int k = 1; k <= 4; ++k) {
    const auto c = decoding_circuit(q, k);
    for (std::uint64_t v = 0; v < q.num_inputs(); ++v) {
      const Bits x = q.input(v);
      const auto out = simulate(c, encode(x));
      double p = 0.0;
      for (std::size_t o = 0; o < out.dim(); ++o)
        if (decoded_bit(q, k, o) == x[k]) p += std::norm(out[o]);
      EXPECT_NEAR(p, want, 1e-12);
    }
  }
}

TEST(EncodingCircuit, LadderAngles) {
  EXPECT_NEAR(ladder_angle(3, 1), 1.2309594173407747, 1e-15);
  EXPECT_NEAR(ladder_angle(3, 2), std::numbers::pi / 2, 1e-15);
}

TEST(EncodingCircuit, ReferenceInputHasNoDisplacement) {
  const QracInstance q(3);
  const auto c = encoding_circuit(reference_input(3), q);
  EXPECT_EQ(c.gates.size(), 2u);
  EXPECT_EQ(c.count(GateKind::MCRY), 2u);
  EXPECT_LT(simulate(c).max_abs_diff(reference_state(3)), 1e-15);
  const auto u = circuit_to_unitary(c);
  const double r = 1.0 / std::sqrt(3.0);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(u(i, 0) - cplx(i < 3 ? r : 0.0)), 0.0, 1e-15);
}

TEST(EncodingCircuit, WorkedExample) {
  const QracInstance q(3);
  const auto c = encoding_circuit(Bits::from_string("100"), q);
  ASSERT_EQ(c.gates.size(), 4u);
  EXPECT_EQ(c.gates[2], Gate::single(GateKind::X, 0));
  EXPECT_EQ(c.gates[3], Gate::single(GateKind::Z, 0));
  EXPECT_EQ(c.info.header(), "n=3 y=100");
  EXPECT_LT(simulate(c).max_abs_diff(encode(Bits::from_string("100"))), 1e-15);
}

TEST(EncodingCircuit, AllInputsWithSign) {
  for (int n = 2; n <= 7; ++n) {
    const QracInstance q(n);
    for (std::uint64_t v = 0; v < q.num_inputs(); ++v) {
      const Bits y = q.input(v);
      const auto out = simulate(encoding_circuit(y, q));
      const double sign = y.is_odd() ? displacement(y).global_sign : 1.0;
      EXPECT_LT(out.max_abs_diff(encode(y).scaled(sign)), 1e-12) << y.str();
    }
  }
}

TEST(EncodingCircuit, RejectsLengthMismatch) {
  EXPECT_THROW(encoding_circuit(Bits::from_string("10"), QracInstance(3)), std::invalid_argument);
}

TEST(ExpandMcry, NoControlsIsPlainRy) {
  Circuit c{2, {Gate::mcry({}, {}, 1, 0.3)}, {}};
  const auto e = expand_mcry(c);
  ASSERT_EQ(e.gates.size(), 1u);
  EXPECT_EQ(e.gates[0], Gate::single(GateKind::RY, 1, 0.3));
}

TEST(ExpandMcry, OneZeroControlPattern) {
  Circuit c{2, {Gate::mcry({0}, {0}, 1, 0.8)}, {}};
  const auto e = expand_mcry(c);
  const std::vector<Gate> want = {Gate::single(GateKind::X, 0), Gate::single(GateKind::RY, 1, 0.4), Gate::cnot(0, 1),
                                  Gate::single(GateKind::RY, 1, -0.4), Gate::cnot(0, 1), Gate::single(GateKind::X, 0)};
  EXPECT_EQ(e.gates, want);
  EXPECT_LT(circuit_to_unitary(e).max_abs_diff(mcry_matrix(2, {0}, {0}, 1, 0.8)), 1e-14);
}

TEST(ExpandMcry, MatchesDirectMatrices) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int controls = 0; controls <= 4; ++controls) {
    std::vector<int> wires;
    std::vector<int> pol;
    for (int i = 0; i < controls; ++i) {
      wires.push_back(i);
      pol.push_back(static_cast<int>(rng() & 1));
    }
    const double theta = angle(rng);
    const int qubits = controls + 1;
    Circuit c{qubits, {Gate::mcry(wires, pol, controls, theta)}, {}};
    const auto direct = mcry_matrix(qubits, wires, pol, controls, theta);
    EXPECT_LT(circuit_to_unitary(c).max_abs_diff(direct), 1e-14);
    const auto e = expand_mcry(c);
    EXPECT_EQ(e.count(GateKind::MCRY), 0u);
    EXPECT_LT(circuit_to_unitary(e).max_abs_diff(direct), 1e-10) << controls;
  }
}

TEST(CircuitToUnitary, EmptyIsIdentityAndGateMatrices) {
  EXPECT_EQ(circuit_to_unitary(Circuit{3, {}, {}}).max_abs_diff(DenseOperator::identity(8)), 0.0);
  const double h = 1.0 / std::sqrt(2.0);
  DenseOperator had(2);
  had(0, 0) = had(0, 1) = had(1, 0) = h;
  had(1, 1) = -h;
  EXPECT_LT(circuit_to_unitary(Circuit{1, {Gate::single(GateKind::H, 0)}, {}}).max_abs_diff(had), 1e-16);
  DenseOperator s(2);
  s(0, 0) = 1.0;
  s(1, 1) = kI;
  EXPECT_EQ(circuit_to_unitary(Circuit{1, {Gate::single(GateKind::S, 0)}, {}}).max_abs_diff(s), 0.0);
  EXPECT_EQ(circuit_to_unitary(Circuit{1, {Gate::single(GateKind::Sdg, 0)}, {}}).max_abs_diff(s.adjoint()), 0.0);
  // CNOT with control on wire 0 (the high bit): |10> -> |11>.
  const auto cx = circuit_to_unitary(Circuit{2, {Gate::cnot(0, 1)}, {}});
  EXPECT_EQ(cx(3, 2), cplx(1.0));
  EXPECT_EQ(cx(1, 1), cplx(1.0));
  // RZ and RY are exp(-i theta Z / 2), exp(-i theta Y / 2).
  EXPECT_LT(circuit_to_unitary(Circuit{1, {Gate::single(GateKind::RZ, 0, 0.7)}, {}})
                .max_abs_diff(rotation_matrix(w("Z"), 0.7)),
            1e-15);
  EXPECT_LT(circuit_to_unitary(Circuit{1, {Gate::single(GateKind::RY, 0, 0.7)}, {}})
                .max_abs_diff(rotation_matrix(w("Y"), 0.7)),
            1e-15);
}

TEST(CircuitToUnitary, RejectsBadCircuits) {
  EXPECT_THROW(circuit_to_unitary(Circuit{11, {}, {}}), std::length_error);
  EXPECT_THROW(circuit_to_unitary(Circuit{2, {Gate::cnot(1, 1)}, {}}), std::invalid_argument);
  EXPECT_THROW(circuit_to_unitary(Circuit{2, {Gate::single(GateKind::H, 2)}, {}}), std::out_of_range);
}

}  // namespace
}  // namespace qrac
