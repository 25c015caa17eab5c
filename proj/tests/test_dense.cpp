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

#include <Eigen/Dense>
#include <random>

#include "qrac/dense.hpp"
#include "qrac/pauli.hpp"

namespace qrac {
namespace {

DenseOperator random_hermitian(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> g;
  DenseOperator h(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    h(r, r) = g(rng);
    for (std::size_t c = r + 1; c < dim; ++c) {
      h(r, c) = cplx(g(rng), g(rng));
      h(c, r) = std::conj(h(r, c));
    }
  }
  return h;
}

Eigen::MatrixXcd to_eigen(const DenseOperator& a) {
  Eigen::MatrixXcd m(a.dim(), a.dim());
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c) m(r, c) = a(r, c);
  return m;
}

TEST(DenseOperator, BasicAlgebra) {
  const auto id = DenseOperator::identity(4);
  EXPECT_EQ(id.trace(), cplx(4.0));
  const auto e0 = StateVector::basis(4, 0);
  const auto e3 = StateVector::basis(4, 3);
  const auto o = DenseOperator::outer(e3, e0);
  EXPECT_EQ(o.apply(e0).max_abs_diff(e3), 0.0);
  EXPECT_EQ((o * o).max_abs(), 0.0);
  EXPECT_EQ(o.adjoint()(0, 3), cplx(1.0));
  EXPECT_FALSE(o.is_hermitian());
  EXPECT_TRUE((o + o.adjoint()).is_hermitian());
  EXPECT_THROW(DenseOperator(3), std::invalid_argument);
  EXPECT_THROW(DenseOperator(2) + DenseOperator(4), std::invalid_argument);
}

TEST(StateVector, InnerProductConjugatesLeft) {
  auto a = StateVector::zeros(2);
  a[0] = cplx(0.0, 1.0);
  auto b = StateVector::basis(2, 0);
  EXPECT_EQ(a.inner(b), cplx(0.0, -1.0));
  EXPECT_DOUBLE_EQ(a.norm(), 1.0);
}

TEST(HermitianEigen, MatchesEigenLibraryOnRandomInputs) {
  std::mt19937_64 rng(3);
  for (std::size_t dim : {2u, 4u, 8u, 16u, 32u}) {
    const auto h = random_hermitian(rng, dim);
    const auto ours = hermitian_eigen(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(to_eigen(h));
    for (std::size_t i = 0; i < dim; ++i) EXPECT_NEAR(ours.values[i], ref.eigenvalues()(i), 1e-10) << dim;
    // Eigenvector residuals.
    for (std::size_t i = 0; i < dim; ++i) {
      const auto v = ours.vector(i);
      EXPECT_LT(h.apply(v).max_abs_diff(v.scaled(ours.values[i])), 1e-10);
      EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    }
  }
}

TEST(HermitianEigen, DegenerateSpectrum) {
  const auto h = to_dense(PauliString::from_letters("ZZI")) + to_dense(PauliString::from_letters("XXI"));
  const auto e = hermitian_eigen(h);
  const std::vector<double> want = {-2, -2, 0, 0, 0, 0, 2, 2};
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(e.values[i], want[i], 1e-12);
}

TEST(HermitianEigen, RejectsNonHermitianAndOversized) {
  DenseOperator a(2);
  a(0, 1) = 1.0;
  EXPECT_THROW(hermitian_eigen(a), std::invalid_argument);
  EXPECT_THROW(hermitian_eigen(DenseOperator::identity(8), 4), std::length_error);
}

TEST(OperatorNorm, HermitianAntiHermitianAndGeneral) {
  const auto x = to_dense(PauliString::from_letters("X"));
  const auto z = to_dense(PauliString::from_letters("Z"));
  EXPECT_NEAR(operator_norm(x + z), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(operator_norm(x * z - z * x), 2.0, 1e-12);  // anti-Hermitian
  DenseOperator j(2);
  j(0, 1) = 3.0;
  EXPECT_NEAR(operator_norm(j), 3.0, 1e-12);  // neither
  std::mt19937_64 rng(5);
  const auto h = random_hermitian(rng, 16);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(to_eigen(h));
  EXPECT_NEAR(operator_norm(h), ref.eigenvalues().cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Expectation, RealForHermitianAndRejectsComplex) {
  const auto psi = StateVector::basis(2, 0);
  EXPECT_DOUBLE_EQ(expectation(to_dense(PauliString::from_letters("Z")), psi), 1.0);
  DenseOperator a(2);
  a(0, 0) = cplx(0.0, 1.0);
  EXPECT_THROW(expectation(a, psi), std::runtime_error);
}

}  // namespace
}  // namespace qrac
