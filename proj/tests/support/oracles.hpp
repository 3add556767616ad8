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

// Independent reference computations for the unit and acceptance suites.
// Nothing here calls into the code path it is used to check.

#ifndef HMIA_TESTS_SUPPORT_ORACLES_HPP_
#define HMIA_TESTS_SUPPORT_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "hmia/bit_vector.hpp"
#include "hmia/rng.hpp"

namespace hmia::testing {

inline BitVector random_bits(std::size_t m, Rng& rng, double p = 0.5) {
  std::bernoulli_distribution bit(p);
  BitVector v(m);
  for (std::size_t i = 0; i < m; ++i) v.set(i, bit(rng));
  return v;
}

inline std::size_t naive_hamming(const BitVector& a, const BitVector& b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.width(); ++i) d += a.get(i) != b.get(i) ? 1 : 0;
  return d;
}

// O(n^2) pair counting: a positive above a negative scores 1, a tie 1/2.
inline double brute_auc(std::span<const double> pos, std::span<const double> neg) {
  double wins = 0.0;
  for (double p : pos) {
    for (double q : neg) wins += p > q ? 1.0 : (p == q ? 0.5 : 0.0);
  }
  return wins / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

inline std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j < idx.size() && v[idx[j]] == v[idx[i]]) ++j;
    const double r = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) ranks[idx[t]] = r;
    i = j;
  }
  return ranks;
}

// Spearman rank correlation: Pearson correlation of mid-ranks.
inline double spearman(std::span<const double> x, std::span<const double> y) {
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// Percentile bootstrap interval for the mean.
inline std::pair<double, double> bootstrap_mean_ci(std::span<const double> values,
                                                   std::size_t resamples, double level,
                                                   Rng& rng) {
  std::vector<double> means;
  means.reserve(resamples);
  std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
  for (std::size_t b = 0; b < resamples; ++b) {
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += values[pick(rng)];
    means.push_back(s / static_cast<double>(values.size()));
  }
  std::sort(means.begin(), means.end());
  const double tail = (1.0 - level) / 2.0;
  auto at = [&](double q) {
    const auto i = static_cast<std::size_t>(std::floor(q * static_cast<double>(means.size() - 1)));
    return means[i];
  };
  return {at(tail), at(1.0 - tail)};
}

// Hungarian algorithm (square, minimization). Returns assignment row -> col.
inline std::vector<int> hungarian(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

// Fraction of records whose cluster maps to their true group under the best
// one-to-one relabeling.
inline double matched_agreement(std::span<const int> clusters, std::span<const int> truth,
                                std::size_t k) {
  std::vector<std::vector<double>> cost(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < clusters.size(); ++i) cost[clusters[i]][truth[i]] -= 1.0;
  const auto match = hungarian(cost);
  std::size_t agree = 0;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (match[clusters[i]] == truth[i]) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(clusters.size());
}

}  // namespace hmia::testing

#endif  // HMIA_TESTS_SUPPORT_ORACLES_HPP_
