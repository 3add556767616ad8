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

#include "hmia/feature_select.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "support/oracles.hpp"

namespace hmia {
namespace {

double entropy_bits(const std::vector<int>& a) {
  std::map<int, double> counts;
  for (int v : a) counts[v] += 1.0;
  double h = 0.0;
  for (const auto& [v, c] : counts) {
    const double p = c / static_cast<double>(a.size());
    h -= p * std::log2(p);
  }
  return h;
}

TEST(MutualInformationTest, FairBitWithItselfIsOneBit) {
  const std::vector<int> a{0, 1, 0, 1, 1, 0};
  EXPECT_NEAR(mutual_information(a, a), 1.0, 1e-12);
}

TEST(MutualInformationTest, ProductDistributionIsZero) {
  std::vector<int> a, b;
  for (int i = 0; i < 12; ++i) {
    a.push_back(i % 2);
    b.push_back((i / 2) % 3);
  }
  EXPECT_NEAR(mutual_information(a, b), 0.0, 1e-12);
}

TEST(MutualInformationTest, FourRowJointTable) {
  // p(a,b) = 1/4 everywhere, marginals 1/2: every log term is log2(1) = 0.
  const std::vector<int> a{0, 0, 1, 1};
  const std::vector<int> b{0, 1, 0, 1};
  EXPECT_EQ(mutual_information(a, b), 0.0);
}

TEST(MutualInformationTest, SymmetricNonnegativeAndSelfIsEntropy) {
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 5 + t % 60;
    std::vector<int> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = static_cast<int>(uniform_index(rng, 2));
      b[i] = static_cast<int>(uniform_index(rng, 4));
    }
    EXPECT_NEAR(mutual_information(a, b), mutual_information(b, a), 1e-12);
    EXPECT_GE(mutual_information(a, b), 0.0);
    EXPECT_NEAR(mutual_information(a, a), entropy_bits(a), 1e-12);
  }
}

TEST(MutualInformationTest, LengthMismatchIsDomainError) {
  const std::vector<int> a{0, 1};
  const std::vector<int> b{0, 1, 1};
  try {
    mutual_information(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDomain);
  }
}

Dataset planted(Rng& rng) {
  std::vector<BitVector> xs;
  std::vector<int> ys;
  for (int i = 0; i < 400; ++i) {
    auto x = testing::random_bits(8, rng);
    const int y = static_cast<int>(uniform_index(rng, 2));
    x.set(0, y == 1);
    xs.push_back(x);
    ys.push_back(y);
  }
  return Dataset(Schema{8, 2, "planted"}, xs, ys);
}

TEST(MrmrTest, PlantedFeatureRanksFirst) {
  Rng rng(2);
  const auto d = planted(rng);
  const auto ranking = mrmr_rank(d, 3);
  EXPECT_EQ(ranking.entries.front().feature, 0u);
  EXPECT_EQ(ranking.relevance_scheme, "MID");
  EXPECT_EQ(ranking.log_base, 2);
}

TEST(MrmrTest, FirstPickIsBruteForceArgmaxRelevance) {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    std::vector<BitVector> xs;
    std::vector<int> ys;
    for (int i = 0; i < 80; ++i) {
      xs.push_back(testing::random_bits(6, rng, 0.4));
      ys.push_back(static_cast<int>(uniform_index(rng, 3)));
    }
    Dataset d(Schema{6, 3, "r"}, xs, ys);
    std::size_t best = 0;
    double best_mi = -1.0;
    for (std::size_t f = 0; f < 6; ++f) {
      const double mi = mutual_information(feature_column(d, f), d.labels());
      if (mi > best_mi) {
        best_mi = mi;
        best = f;
      }
    }
    EXPECT_EQ(mrmr_rank(d, 1).entries.front().feature, best);
  }
}

TEST(MrmrTest, RedundantDuplicateLosesToIndependentFeature) {
  // Label = 2*b0 + b1. Features: f0 = b0, f1 = b0 (duplicate), f2 = b1 with one
  // row in ten flipped, f3 = constant noise-free filler.
  std::vector<BitVector> xs;
  std::vector<int> ys;
  for (int rep = 0; rep < 10; ++rep) {
    for (int b0 = 0; b0 < 2; ++b0) {
      for (int b1 = 0; b1 < 2; ++b1) {
        for (int k = 0; k < 10; ++k) {
          BitVector x(4);
          x.set(0, b0);
          x.set(1, b0);
          x.set(2, k == 0 ? !b1 : b1);
          x.set(3, (rep + k) % 2);
          xs.push_back(x);
          ys.push_back(2 * b0 + b1);
        }
      }
    }
  }
  Dataset d(Schema{4, 4, "dup"}, xs, ys);
  const auto r = mrmr_rank(d, 2);
  EXPECT_EQ(r.entries[0].feature, 0u);
  EXPECT_EQ(r.entries[1].feature, 2u);
}

TEST(MrmrTest, FullRankingIsAPermutation) {
  Rng rng(4);
  const auto d = planted(rng);
  const auto r = mrmr_rank(d, 8);
  std::set<std::size_t> seen;
  for (const auto& e : r.entries) seen.insert(e.feature);
  EXPECT_EQ(seen.size(), 8u);
}

TEST(MrmrTest, ConstantLabelsAreRejected) {
  std::vector<BitVector> xs{BitVector::from_string("01"), BitVector::from_string("10")};
  Dataset d(Schema{2, 1, "c"}, xs, std::vector<int>{0, 0});
  try {
    mrmr_rank(d, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDomain);
  }
}

TEST(MrmrTest, Deterministic) {
  Rng rng(5);
  const auto d = planted(rng);
  const auto a = mrmr_rank(d, 5);
  const auto b = mrmr_rank(d, 5);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(a.entries[i].feature, b.entries[i].feature);
}

}  // namespace
}  // namespace hmia
