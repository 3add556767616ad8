// Copyright 2026 The hmia Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HMIA_BIT_VECTOR_HPP_
#define HMIA_BIT_VECTOR_HPP_

// Fixed-width binary feature vector, packed 64 features per word so that
// Hamming distance is a XOR + popcount per word.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hmia/error.hpp"

namespace hmia {

class BitVector {
 public:
  BitVector() = default;

  // All-zero vector of the given width.
  explicit BitVector(std::size_t width)
      : width_(width), words_((width + 63) / 64, 0) {
    require(width > 0, ErrorKind::kDomain, "bit vector width must be positive");
  }

  // Parses "0101"; character i is feature i.
  static BitVector from_string(std::string_view text) {
    BitVector v(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '1') {
        v.set(i, true);
      } else if (text[i] != '0') {
        fail(ErrorKind::kFormat, "bit string contains '" + std::string(1, text[i]) + "'");
      }
    }
    return v;
  }

  // Low `width` bits of `bits`; feature i is bit i.
  static BitVector from_bits(std::uint64_t bits, std::size_t width) {
    require(width <= 64, ErrorKind::kDomain, "from_bits width exceeds 64");
    BitVector v(width);
    v.words_[0] = width == 64 ? bits : bits & ((std::uint64_t{1} << width) - 1);
    return v;
  }

  std::size_t width() const noexcept { return width_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  bool get(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }

  void set(std::size_t i, bool value) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  std::string to_string() const {
    std::string s(width_, '0');
    for (std::size_t i = 0; i < width_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;  // unused high bits of the last word stay 0
};

inline std::size_t hamming(const BitVector& a, const BitVector& b) {
  require(a.width() == b.width(), ErrorKind::kSchema,
          "hamming width mismatch: " + std::to_string(a.width()) + " vs " +
              std::to_string(b.width()));
  auto wa = a.words();
  auto wb = b.words();
  std::size_t d = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) {
    d += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
  }
  return d;
}

struct BitVectorHash {
  std::size_t operator()(const BitVector& v) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ v.width();
    for (std::uint64_t w : v.words()) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace hmia

#endif  // HMIA_BIT_VECTOR_HPP_
