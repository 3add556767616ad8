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

#ifndef HMIA_KMEANS_HPP_
#define HMIA_KMEANS_HPP_

// Lloyd's k-means with k-means++ seeding over binary records. Squared
// Euclidean distance on 0/1 features; for two binary vectors it equals their
// Hamming distance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "hmia/dataset.hpp"
#include "hmia/error.hpp"
#include "hmia/rng.hpp"

namespace hmia {

struct KMeansConfig {
  std::size_t k = 10;
  int max_iters = 100;
  std::uint64_t seed = 0;
  double tol = 1e-6;
};

struct KMeansResult {
  std::vector<std::vector<double>> centroids;
  std::vector<int> assignments;
  double inertia = 0.0;
  // Inertia after seeding, then after each Lloyd iteration.
  std::vector<double> inertia_history;
  int iterations = 0;
};

namespace kmeans_detail {

inline double squared_distance(const BitVector& x, std::span<const double> c) {
  double d = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double diff = (x.get(i) ? 1.0 : 0.0) - c[i];
    d += diff * diff;
  }
  return d;
}

inline std::vector<double> to_point(const BitVector& x) {
  std::vector<double> p(x.width());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = x.get(i) ? 1.0 : 0.0;
  return p;
}

}  // namespace kmeans_detail

// argmin over squared Euclidean distance, lowest index on ties.
inline int assign(std::span<const std::vector<double>> centroids, const BitVector& x) {
  require(!centroids.empty(), ErrorKind::kDomain, "no centroids");
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    require(centroids[c].size() == x.width(), ErrorKind::kSchema,
            "centroid width " + std::to_string(centroids[c].size()) + " vs vector width " +
                std::to_string(x.width()));
    const double d = kmeans_detail::squared_distance(x, centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

inline KMeansResult kmeans_label(const Dataset& data, const KMeansConfig& cfg) {
  using kmeans_detail::squared_distance;
  const std::size_t n = data.size();
  const std::size_t m = data.width();
  require(cfg.k >= 2, ErrorKind::kDomain, "k-means needs k >= 2");
  require(cfg.k <= n, ErrorKind::kDomain,
          "k = " + std::to_string(cfg.k) + " exceeds record count " + std::to_string(n));
  require(cfg.max_iters >= 1, ErrorKind::kDomain, "max_iters must be positive");
  require(cfg.tol >= 0.0, ErrorKind::kDomain, "tol must be nonnegative");
  Rng rng(cfg.seed);

  // Greedy k-means++ seeding: each step draws 2 + ln(k) candidates with
  // probability proportional to squared distance and keeps the one that
  // leaves the smallest potential.
  KMeansResult result;
  const std::size_t trials = 2 + static_cast<std::size_t>(std::log(static_cast<double>(cfg.k)));
  std::vector<double> nearest(n);
  result.centroids.push_back(kmeans_detail::to_point(data[uniform_index(rng, n)]));
  for (std::size_t i = 0; i < n; ++i) nearest[i] = squared_distance(data[i], result.centroids[0]);
  std::vector<double> candidate_nearest(n);
  std::vector<double> best_nearest(n);
  while (result.centroids.size() < cfg.k) {
    const double total = std::accumulate(nearest.begin(), nearest.end(), 0.0);
    std::size_t best_pick = result.centroids.size() % n;
    double best_potential = std::numeric_limits<double>::infinity();
    if (total <= 0.0) {
      // Fewer distinct points than k: any further centroid duplicates one.
      best_nearest = nearest;
    } else {
      for (std::size_t t = 0; t < trials; ++t) {
        double target = std::uniform_real_distribution<double>(0.0, total)(rng);
        std::size_t pick = n - 1;
        for (std::size_t i = 0; i < n; ++i) {
          target -= nearest[i];
          if (target < 0.0 && nearest[i] > 0.0) {
            pick = i;
            break;
          }
        }
        while (nearest[pick] <= 0.0 && pick > 0) --pick;
        const auto point = kmeans_detail::to_point(data[pick]);
        double potential = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          candidate_nearest[i] = std::min(nearest[i], squared_distance(data[i], point));
          potential += candidate_nearest[i];
        }
        if (potential < best_potential) {
          best_potential = potential;
          best_pick = pick;
          best_nearest.swap(candidate_nearest);
        }
      }
    }
    nearest = best_nearest;
    result.centroids.push_back(kmeans_detail::to_point(data[best_pick]));
  }

  result.assignments.assign(n, 0);
  std::vector<double> dist(n, 0.0);
  auto assign_all = [&] {
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const int a = assign(result.centroids, data[i]);
      result.assignments[i] = a;
      dist[i] = squared_distance(data[i], result.centroids[a]);
      inertia += dist[i];
    }
    return inertia;
  };

  double previous = assign_all();
  result.inertia_history.push_back(previous);
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    // Empty-cluster repair: the point farthest from its centroid becomes the
    // centroid of the empty cluster.
    std::vector<std::size_t> counts(cfg.k, 0);
    for (int a : result.assignments) ++counts[a];
    for (std::size_t c = 0; c < cfg.k; ++c) {
      if (counts[c] != 0) continue;
      std::size_t far = 0;
      for (std::size_t i = 1; i < n; ++i) {
        if (dist[i] > dist[far] && counts[result.assignments[i]] > 1) far = i;
      }
      if (dist[far] <= 0.0 || counts[result.assignments[far]] <= 1) continue;
      --counts[result.assignments[far]];
      result.assignments[far] = static_cast<int>(c);
      counts[c] = 1;
      dist[far] = 0.0;
    }

    // Update step.
    std::vector<std::vector<double>> sums(cfg.k, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      auto& s = sums[result.assignments[i]];
      for (std::size_t f = 0; f < m; ++f) {
        if (data[i].get(f)) s[f] += 1.0;
      }
    }
    for (std::size_t c = 0; c < cfg.k; ++c) {
      if (counts[c] == 0) continue;
      for (std::size_t f = 0; f < m; ++f) {
        result.centroids[c][f] = sums[c][f] / static_cast<double>(counts[c]);
      }
    }

    const double current = assign_all();
    result.inertia_history.push_back(current);
    result.iterations = iter + 1;
    const bool converged = previous - current < cfg.tol;
    previous = current;
    if (converged) break;
  }
  result.inertia = previous;
  return result;
}

// The dataset relabeled with the clustering's assignments as class labels.
inline Dataset apply_labels(const Dataset& data, const KMeansResult& result) {
  return data.with_labels(result.assignments, result.centroids.size());
}

}  // namespace hmia

#endif  // HMIA_KMEANS_HPP_
