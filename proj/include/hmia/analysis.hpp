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

#ifndef HMIA_ANALYSIS_HPP_
#define HMIA_ANALYSIS_HPP_

// Distance-stratified membership analysis: non-members are grouped by their
// Hamming distance to the training set and each group is scored against the
// member confidences with its own AUC.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hmia/auc.hpp"
#include "hmia/dataset.hpp"
#include "hmia/error.hpp"
#include "hmia/rng.hpp"
#include "hmia/scorer.hpp"

namespace hmia {

struct DistanceHistogram {
  std::map<std::size_t, std::size_t> counts;  // distance to training set -> vectors
  std::vector<std::string> warnings;

  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& [d, c] : counts) n += c;
    return n;
  }
};

inline std::vector<std::size_t> distances_to_dataset(const Dataset& xs, const Dataset& train) {
  require(xs.empty() || xs.width() == train.width(), ErrorKind::kSchema,
          "width mismatch between query set and training set");
  std::vector<std::size_t> out;
  out.reserve(xs.size());
  for (const auto& x : xs.records()) out.push_back(distance_to_dataset(x, train));
  return out;
}

inline DistanceHistogram distance_histogram(const Dataset& nonmembers, const Dataset& train) {
  DistanceHistogram h;
  for (std::size_t d : distances_to_dataset(nonmembers, train)) ++h.counts[d];
  if (auto it = h.counts.find(0); it != h.counts.end()) {
    h.warnings.push_back(std::to_string(it->second) +
                         " non-member vector(s) also occur in the training set (distance 0)");
  }
  return h;
}

struct DistanceBucket {
  std::size_t distance = 0;
  std::vector<double> confidences;
  std::size_t count() const { return confidences.size(); }
};

struct BucketAuc {
  std::size_t distance = 0;
  std::size_t n = 0;
  std::optional<double> auc;  // absent below the minimum bucket size
};

struct StratifiedAucReport {
  std::vector<double> member_confidences;
  std::vector<DistanceBucket> buckets;  // ascending distance, all >= 1
  std::vector<BucketAuc> per_bucket;
  std::optional<double> overall_auc;    // members vs. every bucketed non-member
  std::size_t iterations = 0;
  std::size_t min_bucket = 0;
  std::vector<std::string> warnings;
};

// Pools member confidences and (distance, confidence) pairs over repeated
// iterations; one AUC per bucket is then computed on the pooled values.
class StratifiedAucAccumulator {
 public:
  void add_members(std::span<const double> confidences) {
    members_.insert(members_.end(), confidences.begin(), confidences.end());
  }

  void add(std::size_t distance, double confidence) {
    if (distance == 0) {
      ++dropped_;
      return;
    }
    buckets_[distance].push_back(confidence);
  }

  void end_iteration() { ++iterations_; }

  StratifiedAucReport finalize(std::size_t min_bucket) const {
    StratifiedAucReport report;
    report.member_confidences = members_;
    report.iterations = iterations_;
    report.min_bucket = min_bucket;
    std::vector<double> all;
    for (const auto& [d, confs] : buckets_) {
      report.buckets.push_back({d, confs});
      BucketAuc row{d, confs.size(), std::nullopt};
      if (!members_.empty() && confs.size() >= min_bucket && !confs.empty()) {
        row.auc = auc(members_, confs);
      }
      report.per_bucket.push_back(row);
      all.insert(all.end(), confs.begin(), confs.end());
    }
    if (!members_.empty() && !all.empty()) report.overall_auc = auc(members_, all);
    if (dropped_ > 0) {
      report.warnings.push_back(std::to_string(dropped_) +
                                " non-member vector(s) at distance 0 excluded from buckets");
    }
    if (std::none_of(report.per_bucket.begin(), report.per_bucket.end(),
                     [](const BucketAuc& b) { return b.auc.has_value(); })) {
      report.warnings.push_back("no bucket reaches the minimum size of " +
                                std::to_string(min_bucket) + "; report is empty");
    }
    return report;
  }

 private:
  std::vector<double> members_;
  std::map<std::size_t, std::vector<double>> buckets_;
  std::size_t iterations_ = 0;
  std::size_t dropped_ = 0;
};

template <ConfidenceScorer S>
void accumulate_stratified(StratifiedAucAccumulator& acc, const S& scorer,
                           const Dataset& members, const Dataset& nonmembers,
                           const Dataset& train) {
  acc.add_members(score_all(scorer, members.records()));
  const auto dist = distances_to_dataset(nonmembers, train);
  const auto conf = score_all(scorer, nonmembers.records());
  for (std::size_t i = 0; i < conf.size(); ++i) acc.add(dist[i], conf[i]);
}

// Single-iteration distance-stratified AUC. Members form the positive class.
template <ConfidenceScorer S>
StratifiedAucReport distance_stratified_auc(const S& scorer, const Dataset& members,
                                            const Dataset& nonmembers, const Dataset& train,
                                            std::size_t min_bucket = 20) {
  require(!members.empty(), ErrorKind::kDomain, "stratified AUC needs members");
  for (std::size_t i = 0; i < members.size(); ++i) {
    require(train.contains(members[i]), ErrorKind::kDomain,
            "member " + std::to_string(i) + " is not in the training set");
  }
  StratifiedAucAccumulator acc;
  accumulate_stratified(acc, scorer, members, nonmembers, train);
  acc.end_iteration();
  return acc.finalize(min_bucket);
}

// ---- synthetic neighbors ----------------------------------------------------

struct SyntheticNeighbors {
  std::map<std::size_t, Dataset> by_distance;  // keyed by recomputed distance to D
  std::size_t generated = 0;
  // (member position, nominal flip count) pairs whose variants ran short.
  std::vector<std::pair<std::size_t, std::size_t>> exhausted;
};

// For each of `member_sample` random members of D and each nominal distance,
// flips uniformly chosen index subsets until `variants_per_distance` vectors
// outside D exist. Outputs are bucketed by their actual distance to D.
inline SyntheticNeighbors generate_synthetic_neighbors(const Dataset& train,
                                                       std::size_t member_sample,
                                                       std::span<const std::size_t> distances,
                                                       std::size_t variants_per_distance,
                                                       Rng& rng) {
  require(member_sample <= train.size(), ErrorKind::kDomain,
          "member_sample " + std::to_string(member_sample) + " exceeds training size " +
              std::to_string(train.size()));
  for (std::size_t d : distances) {
    require(d >= 1 && d <= train.width(), ErrorKind::kDomain,
            "distance " + std::to_string(d) + " outside [1, " + std::to_string(train.width()) +
                "]");
  }
  std::map<std::size_t, std::vector<BitVector>> buckets;
  SyntheticNeighbors out;
  for (std::size_t pos : sample_without_replacement(rng, train.size(), member_sample)) {
    const BitVector& member = train[pos];
    for (std::size_t d : distances) {
      for (std::size_t v = 0; v < variants_per_distance; ++v) {
        std::optional<BitVector> candidate;
        try {
          candidate = sample_neighbor(member, d, train, rng);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::kExhausted) throw;
        }
        if (!candidate) {
          out.exhausted.emplace_back(pos, d);
          break;
        }
        const std::size_t actual = distance_to_dataset(*candidate, train);
        buckets[actual].push_back(std::move(*candidate));
        ++out.generated;
      }
    }
  }
  for (auto& [d, vecs] : buckets) {
    Schema s = train.schema();
    s.classes = 0;
    s.name += "/synthetic-d" + std::to_string(d);
    out.by_distance.emplace(d, Dataset(std::move(s), std::move(vecs)));
  }
  return out;
}

template <ConfidenceScorer S>
void accumulate_buckets(StratifiedAucAccumulator& acc, const S& scorer, const Dataset& members,
                        const std::map<std::size_t, Dataset>& buckets) {
  acc.add_members(score_all(scorer, members.records()));
  for (const auto& [d, data] : buckets) {
    for (double c : score_all(scorer, data.records())) acc.add(d, c);
  }
}

// ---- confidence vs. distance --------------------------------------------------

struct ProfileRow {
  std::size_t distance = 0;
  double fraction_higher = 0.0;  // share of completions with confidence > CONF(x)
  std::size_t n = 0;
};

inline double binomial(std::size_t n, std::size_t k) {
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                             std::lgamma(static_cast<double>(n - k) + 1.0)));
}

// For each target x and each d in [1, m'], compares CONF(x) with completions of
// x's portion that differ from x in exactly d unknown features. All such
// completions are used when there are at most `samples_per_distance` of them,
// otherwise that many uniform draws.
template <ConfidenceScorer S>
std::vector<ProfileRow> confidence_vs_distance_profile(const S& scorer, const Dataset& targets,
                                                       std::span<const std::size_t> unknown,
                                                       Rng& rng,
                                                       std::size_t samples_per_distance = 1024) {
  const std::size_t k = unknown.size();
  require(k >= 1 && k <= 63, ErrorKind::kDomain, "unknown part size must lie in [1, 63]");
  require(samples_per_distance >= 1, ErrorKind::kDomain, "samples_per_distance must be >= 1");
  for (std::size_t f : unknown) {
    require(f < targets.width(), ErrorKind::kDomain, "unknown index outside vector width");
  }
  std::vector<std::size_t> higher(k + 1, 0);
  std::vector<std::size_t> total(k + 1, 0);
  std::vector<BitVector> batch;
  std::vector<std::size_t> batch_d;
  for (const BitVector& x : targets.records()) {
    batch.assign(1, x);
    batch_d.assign(1, 0);
    auto add_mask = [&](std::uint64_t mask, std::size_t d) {
      BitVector v = x;
      for (std::size_t j = 0; j < k; ++j) {
        if ((mask >> j) & 1U) v.flip(unknown[j]);
      }
      batch.push_back(std::move(v));
      batch_d.push_back(d);
    };
    for (std::size_t d = 1; d <= k; ++d) {
      if (binomial(k, d) <= static_cast<double>(samples_per_distance)) {
        // Gosper's hack walks every d-subset of k bits.
        std::uint64_t mask = (d == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << d) - 1;
        const std::uint64_t limit = std::uint64_t{1} << k;
        while (mask < limit) {
          add_mask(mask, d);
          const std::uint64_t c = mask & (~mask + 1);
          const std::uint64_t r = mask + c;
          if (r == 0) break;
          mask = (((r ^ mask) >> 2) / c) | r;
        }
      } else {
        for (std::size_t s = 0; s < samples_per_distance; ++s) {
          std::uint64_t mask = 0;
          for (std::size_t j : sample_without_replacement(rng, k, d)) mask |= std::uint64_t{1} << j;
          add_mask(mask, d);
        }
      }
    }
    const auto conf = score_all(scorer, batch);
    for (std::size_t i = 1; i < batch.size(); ++i) {
      ++total[batch_d[i]];
      if (conf[i] > conf[0]) ++higher[batch_d[i]];
    }
  }
  std::vector<ProfileRow> rows;
  for (std::size_t d = 1; d <= k; ++d) {
    rows.push_back({d,
                    total[d] == 0 ? 0.0
                                  : static_cast<double>(higher[d]) / static_cast<double>(total[d]),
                    total[d]});
  }
  return rows;
}

// ---- output -------------------------------------------------------------------

inline void write_stratified_csv(std::ostream& out, const StratifiedAucReport& report) {
  out << "distance,n,auc\n";
  out.precision(17);
  for (const auto& b : report.per_bucket) {
    out << b.distance << ',' << b.n << ',';
    if (b.auc) out << *b.auc;
    out << '\n';
  }
}

inline nlohmann::json to_json(const StratifiedAucReport& report, bool full) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& b : report.per_bucket) {
    rows.push_back({{"distance", b.distance},
                    {"n", b.n},
                    {"auc", b.auc ? nlohmann::json(*b.auc) : nlohmann::json(nullptr)}});
  }
  nlohmann::json j = {{"iterations", report.iterations},
                      {"min_bucket", report.min_bucket},
                      {"members", report.member_confidences.size()},
                      {"overall_auc", report.overall_auc ? nlohmann::json(*report.overall_auc)
                                                         : nlohmann::json(nullptr)},
                      {"buckets", std::move(rows)},
                      {"warnings", report.warnings}};
  if (full) {
    j["member_confidences"] = report.member_confidences;
    nlohmann::json conf = nlohmann::json::object();
    for (const auto& b : report.buckets) conf[std::to_string(b.distance)] = b.confidences;
    j["bucket_confidences"] = std::move(conf);
  }
  return j;
}

inline void write_histogram_csv(std::ostream& out, const DistanceHistogram& h) {
  out << "distance,count\n";
  for (const auto& [d, c] : h.counts) out << d << ',' << c << '\n';
}

inline void write_profile_csv(std::ostream& out, const std::vector<ProfileRow>& rows) {
  out << "distance,fraction_higher,n\n";
  out.precision(17);
  for (const auto& r : rows) out << r.distance << ',' << r.fraction_higher << ',' << r.n << '\n';
}

}  // namespace hmia

#endif  // HMIA_ANALYSIS_HPP_
