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

#ifndef HMIA_SCORER_HPP_
#define HMIA_SCORER_HPP_

// The attacks only ever see a model through its maximum confidence. Anything
// exposing `max_confidence(const BitVector&) const` can stand in for the
// target model; a batched `max_confidences(span)` is used when present.

#include <concepts>
#include <span>
#include <vector>

#include "hmia/bit_vector.hpp"

namespace hmia {

template <typename S>
concept ConfidenceScorer = requires(const S& s, const BitVector& x) {
  { s.max_confidence(x) } -> std::convertible_to<double>;
};

template <typename S>
concept BatchConfidenceScorer =
    ConfidenceScorer<S> && requires(const S& s, std::span<const BitVector> xs) {
      { s.max_confidences(xs) } -> std::convertible_to<std::vector<double>>;
    };

template <ConfidenceScorer S>
std::vector<double> score_all(const S& scorer, std::span<const BitVector> xs) {
  if constexpr (BatchConfidenceScorer<S>) {
    return scorer.max_confidences(xs);
  } else {
    std::vector<double> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(static_cast<double>(scorer.max_confidence(x)));
    return out;
  }
}

}  // namespace hmia

#endif  // HMIA_SCORER_HPP_
