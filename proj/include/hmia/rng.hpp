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

#ifndef HMIA_RNG_HPP_
#define HMIA_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace hmia {

// Every randomized operation takes one of these explicitly.
using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view bytes,
                             std::uint64_t hash = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

// Child seed for (stage, index) under a master seed. Stable across runs,
// platforms and call order.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view stage,
                                 std::uint64_t index = 0) {
  return splitmix64(fnv1a64(stage, splitmix64(master)) ^ splitmix64(index + 1));
}

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline bool fair_coin(Rng& rng) { return (rng() >> 63) != 0; }

// k distinct values from [0, n) in draw order (partial Fisher-Yates).
inline std::vector<std::size_t> sample_without_replacement(Rng& rng, std::size_t n,
                                                           std::size_t k) {
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + uniform_index(rng, n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace hmia

#endif  // HMIA_RNG_HPP_
