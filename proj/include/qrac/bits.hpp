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

#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qrac {

/// Fixed-length classical bitstring. Bit 1 is the leftmost character and the
/// most significant bit of value(), so "011" has value 3.
class Bits {
 public:
  Bits(int length, std::uint64_t value) : n_(length), value_(value) {
    if (length < 1 || length > 64) throw std::invalid_argument("Bits: length must be in [1, 64]");
    if (length < 64 && (value >> length) != 0) throw std::invalid_argument("Bits: value has bits beyond length");
  }

  static Bits zeros(int length) { return Bits(length, 0); }

  static Bits from_string(std::string_view s) {
    if (s.empty() || s.size() > 64) throw std::invalid_argument("Bits: bitstring length must be in [1, 64]");
    std::uint64_t v = 0;
    for (char c : s) {
      if (c != '0' && c != '1') throw std::invalid_argument("Bits: invalid character in bitstring '" + std::string(s) + "'");
      v = (v << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return Bits(static_cast<int>(s.size()), v);
  }

  int size() const { return n_; }
  std::uint64_t value() const { return value_; }

  int operator[](int i) const { return static_cast<int>((value_ >> position(i)) & 1u); }

  Bits flipped(int i) const { return Bits(n_, value_ ^ (std::uint64_t{1} << position(i))); }

  int weight() const { return std::popcount(value_); }
  int parity() const { return weight() & 1; }
  bool is_odd() const { return parity() == 1; }

  /// First `len` bits as a shorter bitstring.
  Bits prefix(int len) const {
    if (len < 1 || len > n_) throw std::invalid_argument("Bits::prefix: invalid length");
    return Bits(len, value_ >> (n_ - len));
  }

  std::string str() const {
    std::string s(static_cast<std::size_t>(n_), '0');
    for (int i = 1; i <= n_; ++i) s[static_cast<std::size_t>(i - 1)] = static_cast<char>('0' + (*this)[i]);
    return s;
  }

  friend Bits operator^(const Bits& a, const Bits& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("Bits: length mismatch");
    return Bits(a.n_, a.value_ ^ b.value_);
  }

  /// Inner product mod 2.
  friend int dot(const Bits& a, const Bits& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("Bits: length mismatch");
    return std::popcount(a.value_ & b.value_) & 1;
  }

  friend bool operator==(const Bits&, const Bits&) = default;

 private:
  int position(int i) const {
    if (i < 1 || i > n_) throw std::out_of_range("Bits: index " + std::to_string(i) + " outside [1, " + std::to_string(n_) + "]");
    return n_ - i;
  }

  int n_;
  std::uint64_t value_;
};

inline int hamming_distance(const Bits& a, const Bits& b) { return (a ^ b).weight(); }

}  // namespace qrac
