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

#ifndef HMIA_AUC_HPP_
#define HMIA_AUC_HPP_

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "hmia/error.hpp"

namespace hmia {

// Area under the ROC curve of `pos` (scored higher = positive) against `neg`,
// via the Mann-Whitney rank statistic with mid-ranks for ties; ties between a
// positive and a negative count one half.
inline double auc(std::span<const double> pos, std::span<const double> neg) {
  require(!pos.empty() && !neg.empty(), ErrorKind::kDomain,
          "AUC needs non-empty positive and negative score lists");
  std::vector<std::pair<double, bool>> all;
  all.reserve(pos.size() + neg.size());
  for (double s : pos) all.emplace_back(s, true);
  for (double s : neg) all.emplace_back(s, false);
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  // Twice the rank sum keeps mid-ranks integral.
  long double twice_rank_sum = 0;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    std::size_t positives = 0;
    while (j < all.size() && all[j].first == all[i].first) {
      if (all[j].second) ++positives;
      ++j;
    }
    // ranks i+1 .. j, mid-rank (i + 1 + j) / 2
    twice_rank_sum += static_cast<long double>(positives) * static_cast<long double>(i + 1 + j);
    i = j;
  }
  const auto np = static_cast<long double>(pos.size());
  const auto nn = static_cast<long double>(neg.size());
  const long double u = twice_rank_sum / 2 - np * (np + 1) / 2;
  return static_cast<double>(u / (np * nn));
}

}  // namespace hmia

#endif  // HMIA_AUC_HPP_
