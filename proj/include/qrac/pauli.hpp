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

// Signed Hermitian Pauli words in symplectic (x, z) bitmask form and
// real-weighted sums of them.
//
// Sites are 1-based. Site i of an m-site word lives at bit (m - i) of both
// masks, so the masks line up with basis indices where site 1 is the most
// significant bit. The letter at a site is I/X/Z/Y for (x, z) =
// (0,0)/(1,0)/(0,1)/(1,1); Y is the Hermitian Y = iXZ, so no imaginary
// factor is ever stored.

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "qrac/dense.hpp"
#include "qrac/tolerances.hpp"

namespace qrac {

inline constexpr int kMaxSites = 64;

enum class Pauli : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline char pauli_char(Pauli p) { return "IXZY"[static_cast<int>(p)]; }

inline Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I':
    case '_':
      return Pauli::I;
    case 'X':
      return Pauli::X;
    case 'Y':
      return Pauli::Y;
    case 'Z':
      return Pauli::Z;
    default:
      throw std::invalid_argument(std::string("not a Pauli letter: '") + c + "'");
  }
}

class PauliString {
 public:
  /// Identity word with sign +1.
  explicit PauliString(int num_sites) : num_sites_(num_sites) {
    if (num_sites < 1 || num_sites > kMaxSites) {
      throw std::invalid_argument("PauliString: site count " + std::to_string(num_sites) + " outside [1, 64]");
    }
  }

  PauliString(int num_sites, std::uint64_t x_mask, std::uint64_t z_mask, int sign = +1) : PauliString(num_sites) {
    const std::uint64_t valid = num_sites == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << num_sites) - 1;
    if ((x_mask | z_mask) & ~valid) throw std::invalid_argument("PauliString: mask has bits beyond num_sites");
    if (sign != 1 && sign != -1) throw std::invalid_argument("PauliString: sign must be +1 or -1");
    x_ = x_mask;
    z_ = z_mask;
    sign_ = sign;
  }

  /// Dense letter form: "XIZY", "+XZ", "-YY"; '_' is accepted for I.
  static PauliString from_letters(std::string_view letters) {
    int sign = +1;
    if (!letters.empty() && (letters.front() == '+' || letters.front() == '-')) {
      sign = letters.front() == '-' ? -1 : +1;
      letters.remove_prefix(1);
    }
    PauliString p(static_cast<int>(letters.size()));
    for (std::size_t i = 0; i < letters.size(); ++i) p.set(static_cast<int>(i) + 1, pauli_from_char(letters[i]));
    p.sign_ = sign;
    return p;
  }

  /// Sparse site form as produced by str(): "-Y1 X2", "Z3", "+I".
  static PauliString parse(int num_sites, std::string_view text) {
    PauliString p(num_sites);
    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < text.size() && text[pos] == ' ') ++pos;
    };
    skip_ws();
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      p.sign_ = text[pos] == '-' ? -1 : +1;
      ++pos;
    }
    skip_ws();
    if (text.substr(pos) == "I") return p;
    while (pos < text.size()) {
      const Pauli letter = pauli_from_char(text[pos++]);
      std::size_t end = pos;
      while (end < text.size() && text[end] >= '0' && text[end] <= '9') ++end;
      if (end == pos) throw std::invalid_argument("PauliString::parse: missing site index in '" + std::string(text) + "'");
      const int site = std::stoi(std::string(text.substr(pos, end - pos)));
      if (p.letter(site) != Pauli::I) throw std::invalid_argument("PauliString::parse: repeated site");
      p.set(site, letter);
      pos = end;
      skip_ws();
    }
    return p;
  }

  int num_sites() const { return num_sites_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  int sign() const { return sign_; }

  Pauli letter(int site) const {
    const std::uint64_t b = bit(site);
    return static_cast<Pauli>(((x_ & b) ? 1 : 0) | ((z_ & b) ? 2 : 0));
  }

  PauliString with_letter(int site, Pauli p) const {
    PauliString out = *this;
    out.set(site, p);
    return out;
  }

  PauliString negated() const {
    PauliString out = *this;
    out.sign_ = -sign_;
    return out;
  }

  /// Same letters, sign +1.
  PauliString unsigned_word() const {
    PauliString out = *this;
    out.sign_ = +1;
    return out;
  }

  int weight() const { return std::popcount(x_ | z_); }
  bool is_identity() const { return (x_ | z_) == 0; }

  /// Sites carrying a non-identity letter, ascending.
  std::vector<int> support() const {
    std::vector<int> s;
    for (int site = 1; site <= num_sites_; ++site)
      if (letter(site) != Pauli::I) s.push_back(site);
    return s;
  }

  std::string str() const {
    std::string out = sign_ < 0 ? "-" : "+";
    if (is_identity()) return out + "I";
    bool first = true;
    for (int site = 1; site <= num_sites_; ++site) {
      const Pauli p = letter(site);
      if (p == Pauli::I) continue;
      if (!first) out += ' ';
      out += pauli_char(p);
      out += std::to_string(site);
      first = false;
    }
    return out;
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::uint64_t bit(int site) const {
    if (site < 1 || site > num_sites_) {
      throw std::out_of_range("PauliString: site " + std::to_string(site) + " outside [1, " +
                              std::to_string(num_sites_) + "]");
    }
    return std::uint64_t{1} << (num_sites_ - site);
  }

  void set(int site, Pauli p) {
    const std::uint64_t b = bit(site);
    const auto v = static_cast<int>(p);
    x_ = (v & 1) ? (x_ | b) : (x_ & ~b);
    z_ = (v & 2) ? (z_ | b) : (z_ & ~b);
  }

  int num_sites_;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int sign_ = +1;
};

/// a * b == i^phase * word, with word.sign() == +1.
struct PauliProduct {
  int phase;
  PauliString word;
};

namespace detail {

inline void require_same_sites(const PauliString& a, const PauliString& b, const char* what) {
  if (a.num_sites() != b.num_sites()) {
    throw std::invalid_argument(std::string(what) + ": site-count mismatch (" + std::to_string(a.num_sites()) +
                                " vs " + std::to_string(b.num_sites()) + ")");
  }
}

}  // namespace detail

/// Writing each word as i^{x.z} X^x Z^z, moving Z^{z1} past X^{x2} costs
/// (-1)^{z1.x2} and re-expressing X^x Z^z as a Hermitian word costs
/// i^{-x.z}.
inline PauliProduct multiply(const PauliString& a, const PauliString& b) {
  detail::require_same_sites(a, b, "multiply");
  const std::uint64_t x = a.x_mask() ^ b.x_mask();
  const std::uint64_t z = a.z_mask() ^ b.z_mask();
  int phase = std::popcount(a.x_mask() & a.z_mask()) + std::popcount(b.x_mask() & b.z_mask()) +
              2 * std::popcount(a.z_mask() & b.x_mask()) - std::popcount(x & z);
  if (a.sign() < 0) phase += 2;
  if (b.sign() < 0) phase += 2;
  return {((phase % 4) + 4) % 4, PauliString(a.num_sites(), x, z)};
}

inline bool commutes(const PauliString& a, const PauliString& b) {
  detail::require_same_sites(a, b, "commutes");
  return ((std::popcount(a.x_mask() & b.z_mask()) + std::popcount(a.z_mask() & b.x_mask())) & 1) == 0;
}

struct PauliTerm {
  double coeff;
  PauliString word;  // sign always +1
};

/// Real-weighted sum of Pauli words. Terms are unique per (x, z), signs are
/// folded into coefficients, and |coeff| < tol::kPrune is dropped. Terms are
/// kept sorted by (x_mask, z_mask).
class PauliSum {
 public:
  explicit PauliSum(int num_sites) : num_sites_(num_sites) {
    if (num_sites < 1 || num_sites > kMaxSites) throw std::invalid_argument("PauliSum: invalid site count");
  }

  PauliSum(int num_sites, const std::vector<std::pair<double, PauliString>>& terms) : PauliSum(num_sites) {
    Accumulator acc(num_sites);
    for (const auto& [c, w] : terms) acc.add(c, w);
    *this = acc.finish();
  }

  static PauliSum single(const PauliString& word, double coeff = 1.0) {
    return PauliSum(word.num_sites(), {{coeff, word}});
  }

  int num_sites() const { return num_sites_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Coefficient multiplying `word` (its sign included); 0 if absent.
  double coefficient(const PauliString& word) const {
    for (const auto& t : terms_)
      if (t.word.x_mask() == word.x_mask() && t.word.z_mask() == word.z_mask()) return t.coeff * word.sign();
    return 0.0;
  }

  double squared_norm() const {
    double s = 0.0;
    for (const auto& t : terms_) s += t.coeff * t.coeff;
    return s;
  }

  PauliSum scaled(double s) const {
    Accumulator acc(num_sites_);
    for (const auto& t : terms_) acc.add(s * t.coeff, t.word);
    return acc.finish();
  }

  friend PauliSum operator+(const PauliSum& a, const PauliSum& b) { return combine(a, b, +1.0); }
  friend PauliSum operator-(const PauliSum& a, const PauliSum& b) { return combine(a, b, -1.0); }

  /// Sum of |coefficient| over the terms of a - b, without pruning.
  friend double l1_distance(const PauliSum& a, const PauliSum& b) {
    if (a.num_sites_ != b.num_sites_) throw std::invalid_argument("l1_distance: site-count mismatch");
    std::map<std::pair<std::uint64_t, std::uint64_t>, double> diff;
    for (const auto& t : a.terms_) diff[{t.word.x_mask(), t.word.z_mask()}] += t.coeff;
    for (const auto& t : b.terms_) diff[{t.word.x_mask(), t.word.z_mask()}] -= t.coeff;
    double s = 0.0;
    for (const auto& [key, v] : diff) s += std::abs(v);
    return s;
  }

  /// One term per line, e.g. "+1.000000 * Y1 Z2 Y4".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (i) out += '\n';
      out += fmt::format("{:+.6f} * {}", terms_[i].coeff, terms_[i].word.str().substr(1));
    }
    return out;
  }

  class Accumulator {
   public:
    explicit Accumulator(int num_sites) : num_sites_(num_sites) {}
    void add(double coeff, const PauliString& word) {
      if (word.num_sites() != num_sites_) throw std::invalid_argument("PauliSum: site-count mismatch");
      auto [it, inserted] = acc_.try_emplace({word.x_mask(), word.z_mask()}, 0.0);
      it->second += coeff * word.sign();
    }
    PauliSum finish() const {
      PauliSum out(num_sites_);
      for (const auto& [key, c] : acc_)
        if (std::abs(c) >= tol::kPrune) out.terms_.push_back({c, PauliString(num_sites_, key.first, key.second)});
      return out;
    }

   private:
    int num_sites_;
    std::map<std::pair<std::uint64_t, std::uint64_t>, double> acc_;
  };

 private:
  static PauliSum combine(const PauliSum& a, const PauliSum& b, double sb) {
    if (a.num_sites_ != b.num_sites_) throw std::invalid_argument("PauliSum: site-count mismatch");
    Accumulator acc(a.num_sites_);
    for (const auto& t : a.terms_) acc.add(t.coeff, t.word);
    for (const auto& t : b.terms_) acc.add(sb * t.coeff, t.word);
    return acc.finish();
  }

  int num_sites_;
  std::vector<PauliTerm> terms_;
};

/// R * target * R^dagger for R = exp(-i * angle * generator / 2).
///
/// Terms commuting with the generator G pass through. An anticommuting V
/// satisfies V R^dagger = R V, so R V R^dagger = exp(-i angle G) V
/// = cos(angle) V - i sin(angle) G V.
inline PauliSum rotate_conjugate(const PauliSum& target, const PauliString& generator, double angle) {
  if (generator.num_sites() != target.num_sites()) throw std::invalid_argument("rotate_conjugate: site-count mismatch");
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  PauliSum::Accumulator acc(target.num_sites());
  for (const auto& t : target.terms()) {
    if (commutes(generator, t.word)) {
      acc.add(t.coeff, t.word);
      continue;
    }
    acc.add(t.coeff * c, t.word);
    // -i * i^phase must be real: phase + 3 in {0, 2} (mod 4).
    const auto gv = multiply(generator, t.word);
    const int residual = (gv.phase + 3) % 4;
    if (residual % 2 != 0) throw std::logic_error("rotate_conjugate: non-real residual phase");
    acc.add(t.coeff * s * (residual == 0 ? 1.0 : -1.0), gv.word);
  }
  return acc.finish();
}

/// P * sum * P^dagger for a Pauli word P: each term picks up (-1) when it
/// anticommutes with P.
inline PauliSum conjugate_by_pauli(const PauliSum& sum, const PauliString& p) {
  PauliSum::Accumulator acc(sum.num_sites());
  for (const auto& t : sum.terms()) acc.add(commutes(p, t.word) ? t.coeff : -t.coeff, t.word);
  return acc.finish();
}

inline DenseOperator to_dense(const PauliString& w, int dense_limit = kDefaultDenseLimit) {
  if (w.num_sites() > dense_limit) {
    throw std::length_error("to_dense: " + std::to_string(w.num_sites()) + " sites exceeds dense limit " +
                            std::to_string(dense_limit));
  }
  const std::size_t dim = std::size_t{1} << w.num_sites();
  DenseOperator m(dim);
  static constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const cplx base = kIPow[std::popcount(w.x_mask() & w.z_mask()) % 4] * static_cast<double>(w.sign());
  for (std::size_t col = 0; col < dim; ++col) {
    const std::size_t row = col ^ w.x_mask();
    const bool odd = std::popcount(col & w.z_mask()) & 1;
    m(row, col) = odd ? -base : base;
  }
  return m;
}

inline DenseOperator to_dense(const PauliSum& ps, int dense_limit = kDefaultDenseLimit) {
  if (ps.num_sites() > dense_limit) {
    throw std::length_error("to_dense: " + std::to_string(ps.num_sites()) + " sites exceeds dense limit " +
                            std::to_string(dense_limit));
  }
  DenseOperator m(std::size_t{1} << ps.num_sites());
  for (const auto& t : ps.terms()) m += t.coeff * to_dense(t.word, dense_limit);
  return m;
}

}  // namespace qrac
