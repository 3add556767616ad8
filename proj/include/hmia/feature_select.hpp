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

#ifndef HMIA_FEATURE_SELECT_HPP_
#define HMIA_FEATURE_SELECT_HPP_

// Plug-in mutual information over discrete columns and greedy mRMR ranking
// (difference form: relevance minus mean redundancy with the selected set).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hmia/dataset.hpp"
#include "hmia/error.hpp"

namespace hmia {

// Empirical I(a; b) in bits. Columns hold small nonnegative codes.
inline double mutual_information(std::span<const int> a, std::span<const int> b) {
  require(a.size() == b.size(), ErrorKind::kDomain,
          "column lengths differ: " + std::to_string(a.size()) + " vs " +
              std::to_string(b.size()));
  require(!a.empty(), ErrorKind::kDomain, "mutual information of empty columns");
  std::map<std::pair<int, int>, std::size_t> joint;
  std::map<int, std::size_t> ma;
  std::map<int, std::size_t> mb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++joint[{a[i], b[i]}];
    ++ma[a[i]];
    ++mb[b[i]];
  }
  const double n = static_cast<double>(a.size());
  double mi = 0.0;
  for (const auto& [key, count] : joint) {
    const double pxy = static_cast<double>(count) / n;
    const double px = static_cast<double>(ma[key.first]) / n;
    const double py = static_cast<double>(mb[key.second]) / n;
    mi += pxy * std::log2(pxy / (px * py));
  }
  return std::max(mi, 0.0);
}

struct RankedFeature {
  std::size_t feature = 0;
  double score = 0.0;  // mRMR criterion value at the step it was picked
};

struct FeatureRanking {
  std::vector<RankedFeature> entries;  // highest first
  std::string relevance_scheme = "MID";
  int log_base = 2;

  std::vector<std::size_t> top(std::size_t k) const {
    require(k <= entries.size(), ErrorKind::kDomain, "ranking shorter than requested");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < k; ++i) out.push_back(entries[i].feature);
    return out;
  }
};

namespace feature_detail {

// MI between two binary columns from a 2x2 count table.
inline double binary_mi(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t c[2][2] = {{0, 0}, {0, 0}};
  for (std::size_t i = 0; i < a.size(); ++i) ++c[a[i]][b[i]];
  const double n = static_cast<double>(a.size());
  double mi = 0.0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      if (c[x][y] == 0) continue;
      const double pxy = static_cast<double>(c[x][y]) / n;
      const double px = static_cast<double>(c[x][0] + c[x][1]) / n;
      const double py = static_cast<double>(c[0][y] + c[1][y]) / n;
      mi += pxy * std::log2(pxy / (px * py));
    }
  }
  return std::max(mi, 0.0);
}

}  // namespace feature_detail

inline std::vector<int> feature_column(const Dataset& data, std::size_t feature) {
  std::vector<int> col(data.size());
  for (std::size_t r = 0; r < data.size(); ++r) col[r] = data[r].get(feature) ? 1 : 0;
  return col;
}

inline FeatureRanking mrmr_rank(const Dataset& data, std::size_t top_k) {
  require(data.has_labels(), ErrorKind::kDomain, "mRMR needs a labeled dataset");
  require(!data.empty(), ErrorKind::kDomain, "mRMR on an empty dataset");
  const std::size_t m = data.width();
  require(top_k >= 1 && top_k <= m, ErrorKind::kDomain,
          "top_k " + std::to_string(top_k) + " outside [1, " + std::to_string(m) + "]");
  const auto labels = data.labels();
  require(std::adjacent_find(labels.begin(), labels.end(), std::not_equal_to<>()) !=
              labels.end(),
          ErrorKind::kDomain, "constant label column: relevance is zero for every feature");

  std::vector<std::vector<int>> columns(m);
  std::vector<double> relevance(m);
  for (std::size_t f = 0; f < m; ++f) {
    columns[f] = feature_column(data, f);
    relevance[f] = mutual_information(columns[f], labels);
  }

  FeatureRanking ranking;
  std::vector<bool> chosen(m, false);
  std::vector<double> redundancy_sum(m, 0.0);
  for (std::size_t step = 0; step < top_k; ++step) {
    std::size_t best = m;
    double best_score = 0.0;
    for (std::size_t f = 0; f < m; ++f) {
      if (chosen[f]) continue;
      double score = relevance[f];
      if (step > 0) score -= redundancy_sum[f] / static_cast<double>(step);
      if (best == m || score > best_score) {
        best = f;
        best_score = score;
      }
    }
    chosen[best] = true;
    ranking.entries.push_back({best, best_score});
    for (std::size_t f = 0; f < m; ++f) {
      if (!chosen[f]) redundancy_sum[f] += feature_detail::binary_mi(columns[f], columns[best]);
    }
  }
  return ranking;
}

inline void write_ranking_csv(std::ostream& out, const FeatureRanking& ranking) {
  out << "rank,feature_index,score\n";
  for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
    out << i + 1 << ',' << ranking.entries[i].feature << ',' << ranking.entries[i].score << '\n';
  }
}

}  // namespace hmia

#endif  // HMIA_FEATURE_SELECT_HPP_
