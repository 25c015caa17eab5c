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

// Brute-force dense linear algebra used as the ground truth for every
// symbolic result: complex vectors and matrices, a cyclic Jacobi
// eigensolver for Hermitian matrices, operator norms and expectations.
//
// Basis index convention: qubit 1 is the most significant bit.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qrac/tolerances.hpp"

namespace qrac {

using cplx = std::complex<double>;

namespace detail {

inline bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

inline void require_power_of_two(std::size_t dim, const char* what) {
  if (!is_power_of_two(dim)) {
    throw std::invalid_argument(std::string(what) + ": dimension " + std::to_string(dim) +
                                " is not a power of two");
  }
}

}  // namespace detail

class StateVector {
 public:
  explicit StateVector(std::vector<cplx> amplitudes) : amps_(std::move(amplitudes)) {
    detail::require_power_of_two(amps_.size(), "StateVector");
  }

  static StateVector zeros(std::size_t dim) { return StateVector(std::vector<cplx>(dim)); }

  static StateVector basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw std::out_of_range("StateVector::basis: index out of range");
    std::vector<cplx> a(dim);
    a[index] = 1.0;
    return StateVector(std::move(a));
  }

  std::size_t dim() const { return amps_.size(); }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }
  cplx& operator[](std::size_t i) { return amps_[i]; }
  std::span<const cplx> amplitudes() const { return amps_; }

  /// <this|other>
  cplx inner(const StateVector& other) const {
    if (other.dim() != dim()) throw std::invalid_argument("StateVector::inner: dimension mismatch");
    cplx acc = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) acc += std::conj(amps_[i]) * other.amps_[i];
    return acc;
  }

  double norm() const { return std::sqrt(std::real(inner(*this))); }

  StateVector scaled(cplx s) const {
    auto a = amps_;
    for (auto& v : a) v *= s;
    return StateVector(std::move(a));
  }

  double max_abs_diff(const StateVector& other) const {
    if (other.dim() != dim()) throw std::invalid_argument("StateVector::max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) m = std::max(m, std::abs(amps_[i] - other.amps_[i]));
    return m;
  }

 private:
  std::vector<cplx> amps_;
};

/// Square complex matrix, row-major.
class DenseOperator {
 public:
  explicit DenseOperator(std::size_t dim) : dim_(dim), data_(dim * dim) {
    detail::require_power_of_two(dim, "DenseOperator");
  }

  static DenseOperator zeros(std::size_t dim) { return DenseOperator(dim); }

  static DenseOperator identity(std::size_t dim) {
    DenseOperator m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  /// |a><b|
  static DenseOperator outer(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("DenseOperator::outer: dimension mismatch");
    DenseOperator m(a.dim());
    for (std::size_t r = 0; r < a.dim(); ++r) {
      if (a[r] == cplx(0.0)) continue;
      for (std::size_t c = 0; c < b.dim(); ++c) m(r, c) = a[r] * std::conj(b[c]);
    }
    return m;
  }

  std::size_t dim() const { return dim_; }
  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  DenseOperator& operator+=(const DenseOperator& o) {
    check_same(o, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  DenseOperator& operator-=(const DenseOperator& o) {
    check_same(o, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  DenseOperator& operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend DenseOperator operator+(DenseOperator a, const DenseOperator& b) { return a += b; }
  friend DenseOperator operator-(DenseOperator a, const DenseOperator& b) { return a -= b; }
  friend DenseOperator operator*(cplx s, DenseOperator a) { return a *= s; }
  friend DenseOperator operator*(DenseOperator a, cplx s) { return a *= s; }

  friend DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
    a.check_same(b, "operator*");
    const std::size_t n = a.dim_;
    DenseOperator out(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx(0.0)) continue;
        const cplx* brow = &b.data_[k * n];
        cplx* orow = &out.data_[i * n];
        for (std::size_t j = 0; j < n; ++j) orow[j] += aik * brow[j];
      }
    }
    return out;
  }

  StateVector apply(const StateVector& v) const {
    if (v.dim() != dim_) throw std::invalid_argument("DenseOperator::apply: dimension mismatch");
    std::vector<cplx> out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
      cplx acc = 0.0;
      for (std::size_t c = 0; c < dim_; ++c) acc += (*this)(r, c) * v[c];
      out[r] = acc;
    }
    return StateVector(std::move(out));
  }

  DenseOperator adjoint() const {
    DenseOperator out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
  }

  double max_abs_diff(const DenseOperator& o) const {
    check_same(o, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) m = std::max(m, std::abs(data_[i] - o.data_[i]));
    return m;
  }

  /// max|A - A^dagger|
  double hermiticity_defect() const {
    double m = 0.0;
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = r; c < dim_; ++c)
        m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return m;
  }

  bool is_hermitian(double tolerance = tol::kHermitian) const { return hermiticity_defect() < tolerance; }

  /// True if every entry has zero imaginary part.
  bool is_real() const {
    return std::all_of(data_.begin(), data_.end(), [](const cplx& v) { return v.imag() == 0.0; });
  }

 private:
  void check_same(const DenseOperator& o, const char* what) const {
    if (o.dim_ != dim_) throw std::invalid_argument(std::string("DenseOperator::") + what + ": dimension mismatch");
  }

  std::size_t dim_;
  std::vector<cplx> data_;
};

/// Eigenvalues ascending; eigenvector i is column i of `vectors`.
struct EigenDecomposition {
  std::vector<double> values;
  DenseOperator vectors;

  StateVector vector(std::size_t i) const {
    std::vector<cplx> v(vectors.dim());
    for (std::size_t r = 0; r < v.size(); ++r) v[r] = vectors(r, i);
    return StateVector(std::move(v));
  }
};

/// Cyclic complex Jacobi. Each rotation first removes the phase of the
/// pivot a_pq with diag(1, e^{-i arg a_pq}) and then applies the classical
/// real Jacobi rotation, so the work matrix stays Hermitian throughout.
inline EigenDecomposition hermitian_eigen(const DenseOperator& h, std::size_t max_dim = kMaxEigenDim) {
  const std::size_t n = h.dim();
  if (n > max_dim) {
    throw std::length_error("hermitian_eigen: dimension " + std::to_string(n) + " exceeds limit " +
                            std::to_string(max_dim));
  }
  if (!h.is_hermitian(tol::kEigenInput)) throw std::invalid_argument("hermitian_eigen: input is not Hermitian");

  DenseOperator a(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a(r, c) = 0.5 * (h(r, c) + std::conj(h(c, r)));
    a(r, r) = a(r, r).real();
  }
  DenseOperator v = DenseOperator::identity(n);

  const double scale = std::max(1.0, std::pow(h.frobenius_norm(), 2));
  auto off_mass = [&] {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (r != c) s += std::norm(a(r, c));
    return s;
  };

  bool converged = false;
  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    if (off_mass() < tol::kJacobiOffDiagonal * scale) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const cplx phase_conj = std::conj(apq) / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const cplx jpp = c;
        const cplx jpq = s;
        const cplx jqp = -s * phase_conj;
        const cplx jqq = c * phase_conj;

        for (std::size_t r = 0; r < n; ++r) {
          const cplx arp = a(r, p);
          const cplx arq = a(r, q);
          a(r, p) = arp * jpp + arq * jqp;
          a(r, q) = arp * jpq + arq * jqq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const cplx apr = a(p, r);
          const cplx aqr = a(q, r);
          a(p, r) = std::conj(jpp) * apr + std::conj(jqp) * aqr;
          a(q, r) = std::conj(jpq) * apr + std::conj(jqq) * aqr;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const cplx vrp = v(r, p);
          const cplx vrq = v(r, q);
          v(r, p) = vrp * jpp + vrq * jqp;
          v(r, q) = vrp * jpq + vrq * jqq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }
  if (!converged && off_mass() >= tol::kJacobiOffDiagonal * scale) {
    throw std::runtime_error("hermitian_eigen: Jacobi sweeps did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out{std::vector<double>(n), DenseOperator(n)};
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = a(order[i], order[i]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, i) = v(r, order[i]);
  }
  return out;
}

/// Largest singular value. Hermitian and anti-Hermitian inputs are read off
/// the spectrum directly; anything else goes through A^dagger A.
inline double operator_norm(const DenseOperator& a, std::size_t max_dim = kMaxEigenDim) {
  if (a.dim() > max_dim) {
    throw std::length_error("operator_norm: dimension " + std::to_string(a.dim()) + " exceeds limit " +
                            std::to_string(max_dim));
  }
  if (a.max_abs() == 0.0) return 0.0;
  const double tolerance = tol::kHermitian * std::max(1.0, a.max_abs());
  auto spectral_radius = [](const EigenDecomposition& e) {
    return std::max(std::abs(e.values.front()), std::abs(e.values.back()));
  };
  if (a.hermiticity_defect() < tolerance) return spectral_radius(hermitian_eigen(a, max_dim));
  const DenseOperator ia = cplx(0.0, 1.0) * a;
  if (ia.hermiticity_defect() < tolerance) return spectral_radius(hermitian_eigen(ia, max_dim));
  const auto e = hermitian_eigen(a.adjoint() * a, max_dim);
  return std::sqrt(std::max(0.0, e.values.back()));
}

/// Re <psi|A|psi>; throws when the imaginary part is not negligible.
inline double expectation(const DenseOperator& a, const StateVector& psi) {
  if (a.dim() != psi.dim()) throw std::invalid_argument("expectation: dimension mismatch");
  const cplx value = psi.inner(a.apply(psi));
  if (std::abs(value.imag()) >= tol::kImagExpectation) {
    throw std::runtime_error("expectation: imaginary part " + std::to_string(value.imag()) + " is not negligible");
  }
  return value.real();
}

}  // namespace qrac
