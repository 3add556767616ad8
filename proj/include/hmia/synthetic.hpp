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

#ifndef HMIA_SYNTHETIC_HPP_
#define HMIA_SYNTHETIC_HPP_

// Clustered binary data: k distinct random prototypes, each record a
// prototype with independent per-bit flips. Labels are left for k-means to
// derive; the prototype of each record is kept only as ground truth.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "json.hpp"

#include "hmia/bit_vector.hpp"
#include "hmia/dataset.hpp"
#include "hmia/error.hpp"
#include "hmia/rng.hpp"

namespace hmia {

struct SynthSpec {
  std::size_t m = 100;
  std::size_t k = 10;
  std::size_t n = 5000;
  double flip_prob = 0.05;
  std::uint64_t seed = 0;
  std::string name = "synth";

  void validate() const {
    require(m >= 1, ErrorKind::kValidation, "synth.m must be >= 1");
    require(k >= 1, ErrorKind::kValidation, "synth.k must be >= 1");
    require(k <= n, ErrorKind::kValidation, "synth.k must not exceed synth.n");
    require(m >= 63 || k <= (std::size_t{1} << m), ErrorKind::kValidation,
            "synth.k exceeds the number of distinct " + std::to_string(m) + "-bit vectors");
    require(flip_prob > 0.0 && flip_prob < 0.5, ErrorKind::kValidation,
            "synth.flip_prob must lie in (0, 0.5), got " + std::to_string(flip_prob));
  }
};

struct SyntheticData {
  Dataset data;  // unlabeled
  std::vector<BitVector> prototypes;
  std::vector<int> prototype_of;  // ground-truth cluster per record
};

inline SyntheticData generate(const SynthSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  SyntheticData out;
  std::unordered_set<BitVector, BitVectorHash> seen;
  while (out.prototypes.size() < spec.k) {
    BitVector p(spec.m);
    for (std::size_t i = 0; i < spec.m; ++i) p.set(i, fair_coin(rng));
    if (seen.insert(p).second) out.prototypes.push_back(std::move(p));
  }
  std::bernoulli_distribution flip(spec.flip_prob);
  std::vector<BitVector> records;
  records.reserve(spec.n);
  out.prototype_of.reserve(spec.n);
  for (std::size_t r = 0; r < spec.n; ++r) {
    const auto c = uniform_index(rng, spec.k);
    BitVector v = out.prototypes[c];
    for (std::size_t i = 0; i < spec.m; ++i) {
      if (flip(rng)) v.flip(i);
    }
    records.push_back(std::move(v));
    out.prototype_of.push_back(static_cast<int>(c));
  }
  out.data = Dataset(Schema{spec.m, 0, spec.name}, std::move(records));
  return out;
}

inline nlohmann::json generation_metadata(const SynthSpec& spec, const SyntheticData& data) {
  std::vector<std::string> protos;
  for (const auto& p : data.prototypes) protos.push_back(p.to_string());
  return {{"m", spec.m},
          {"k", spec.k},
          {"n", spec.n},
          {"flip_prob", spec.flip_prob},
          {"seed", spec.seed},
          {"name", spec.name},
          {"prototypes", protos},
          {"prototype_of", data.prototype_of}};
}

}  // namespace hmia

#endif  // HMIA_SYNTHETIC_HPP_
