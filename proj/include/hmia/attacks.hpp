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

#ifndef HMIA_ATTACKS_HPP_
#define HMIA_ATTACKS_HPP_

// The four inference games, played by the max-confidence adversary. The
// adversary never looks at class labels, only at the largest confidence the
// target model returns.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hmia/bit_vector.hpp"
#include "hmia/dataset.hpp"
#include "hmia/error.hpp"
#include "hmia/rng.hpp"
#include "hmia/scorer.hpp"

namespace hmia {

struct TrialRecord {
  std::string challenge;
  int truth = 0;           // the game's hidden bit (or hidden position)
  std::int64_t guess = 0;  // what the adversary announced
  bool correct = false;
  double score = 0.0;      // confidence the decision was based on
};

struct GameOutcome {
  std::string game;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double advantage = 0.0;
  std::vector<TrialRecord> log;

  double accuracy() const {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
  }
};

// ---- membership inference ---------------------------------------------------

// Threshold maximizing TPR - FPR when "member" means confidence >= threshold.
// Ties go to the higher threshold.
inline double learn_threshold(std::span<const double> member_conf,
                              std::span<const double> nonmember_conf) {
  require(!member_conf.empty() && !nonmember_conf.empty(), ErrorKind::kDomain,
          "threshold learning needs both populations");
  std::vector<double> cands(member_conf.begin(), member_conf.end());
  cands.insert(cands.end(), nonmember_conf.begin(), nonmember_conf.end());
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  std::vector<double> mem(member_conf.begin(), member_conf.end());
  std::vector<double> non(nonmember_conf.begin(), nonmember_conf.end());
  std::sort(mem.begin(), mem.end());
  std::sort(non.begin(), non.end());
  double best_t = std::numeric_limits<double>::infinity();
  double best_adv = 0.0;
  for (double t : cands) {
    const auto tp = static_cast<double>(mem.end() - std::lower_bound(mem.begin(), mem.end(), t));
    const auto fp = static_cast<double>(non.end() - std::lower_bound(non.begin(), non.end(), t));
    const double adv = tp / static_cast<double>(mem.size()) - fp / static_cast<double>(non.size());
    if (adv >= best_adv) {
      best_adv = adv;
      best_t = t;
    }
  }
  return best_t;
}

// Membership game with every member and every non-member as one challenge each.
// The adversary answers "member" iff max confidence >= threshold; advantage is
// TPR - FPR.
template <ConfidenceScorer S>
GameOutcome run_mia_game(const S& scorer, const Dataset& members, const Dataset& nonmembers,
                         double threshold) {
  require(!members.empty() && !nonmembers.empty(), ErrorKind::kDomain,
          "membership game needs non-empty member and non-member sets");
  require(!std::isnan(threshold), ErrorKind::kDomain, "threshold is NaN");
  const auto member_conf = score_all(scorer, members.records());
  const auto nonmember_conf = score_all(scorer, nonmembers.records());

  GameOutcome out;
  out.game = "mia";
  std::size_t tp = 0;
  std::size_t fp = 0;
  auto play = [&](const std::vector<double>& conf, int truth, const char* tag) {
    for (std::size_t i = 0; i < conf.size(); ++i) {
      const int guess = conf[i] >= threshold ? 0 : 1;
      const bool correct = guess == truth;
      if (guess == 0) (truth == 0 ? tp : fp) += 1;
      out.successes += correct ? 1 : 0;
      out.log.push_back({std::string(tag) + ":" + std::to_string(i), truth, guess, correct, conf[i]});
    }
  };
  play(member_conf, 0, "member");
  play(nonmember_conf, 1, "nonmember");
  out.trials = out.log.size();
  out.advantage = static_cast<double>(tp) / static_cast<double>(members.size()) -
                  static_cast<double>(fp) / static_cast<double>(nonmembers.size());
  return out;
}

// Strong membership game: per trial a uniform member x0 and a radius-r non-member
// neighbor x1 are shown in random order; the adversary picks the higher
// confidence (fair coin on an exact tie). Advantage is 2 * accuracy - 1.
template <ConfidenceScorer S>
GameOutcome run_strong_mia_game(const S& scorer, const Dataset& train, std::size_t r,
                                std::size_t trials, Rng& rng) {
  require(!train.empty(), ErrorKind::kDomain, "strong membership game on an empty dataset");
  require(trials >= 1, ErrorKind::kDomain, "trials must be >= 1");
  require(r >= 1 && r <= train.width(), ErrorKind::kDomain,
          "radius " + std::to_string(r) + " outside [1, " + std::to_string(train.width()) + "]");
  GameOutcome out;
  out.game = "strong-mia";
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t idx = uniform_index(rng, train.size());
    const BitVector& x0 = train[idx];
    const BitVector x1 = sample_neighbor(x0, r, train, rng);
    const int member_pos = fair_coin(rng) ? 1 : 0;
    const BitVector* shown[2];
    shown[member_pos] = &x0;
    shown[1 - member_pos] = &x1;
    const double c0 = scorer.max_confidence(*shown[0]);
    const double c1 = scorer.max_confidence(*shown[1]);
    int pick = 0;
    if (c1 > c0) {
      pick = 1;
    } else if (c1 == c0) {
      pick = fair_coin(rng) ? 1 : 0;
    }
    const bool correct = pick == member_pos;
    out.successes += correct ? 1 : 0;
    out.log.push_back({"member:" + std::to_string(idx) + " r=" + std::to_string(r), member_pos,
                       pick, correct, std::max(c0, c1)});
  }
  out.trials = trials;
  out.advantage = 2.0 * out.accuracy() - 1.0;
  return out;
}

// ---- attribute inference ----------------------------------------------------

inline constexpr std::size_t kMaxUnknown = 20;

// Every completion of a portion that attains the maximum confidence.
struct CompletionSearch {
  double best_confidence = -std::numeric_limits<double>::infinity();
  std::vector<std::uint64_t> tied;  // ascending assignment order
  std::size_t evaluated = 0;
};

template <ConfidenceScorer S>
CompletionSearch search_completions(const S& scorer, const PartialVector& portion) {
  const std::size_t k = portion.unknown_count();
  require(k <= kMaxUnknown, ErrorKind::kBudget,
          "unknown part of size " + std::to_string(k) + " exceeds the enumeration cap of " +
              std::to_string(kMaxUnknown));
  const std::uint64_t total = std::uint64_t{1} << k;
  constexpr std::uint64_t kChunk = 4096;
  CompletionSearch out;
  std::vector<BitVector> batch;
  for (std::uint64_t start = 0; start < total; start += kChunk) {
    const std::uint64_t end = std::min(total, start + kChunk);
    batch.clear();
    for (std::uint64_t a = start; a < end; ++a) batch.push_back(complete(portion, a));
    const auto conf = score_all(scorer, batch);
    for (std::uint64_t a = start; a < end; ++a) {
      const double c = conf[a - start];
      if (c > out.best_confidence) {
        out.best_confidence = c;
        out.tied.assign(1, a);
      } else if (c == out.best_confidence) {
        out.tied.push_back(a);
      }
    }
    out.evaluated += static_cast<std::size_t>(end - start);
  }
  return out;
}

inline std::uint64_t assignment_bits(const PartialVector& portion) {
  std::uint64_t bits = 0;
  auto unknown = portion.unknown();
  for (std::size_t j = 0; j < unknown.size(); ++j) {
    if (portion.base().get(unknown[j])) bits |= std::uint64_t{1} << j;
  }
  return bits;
}

struct AiaTarget {
  std::size_t target_id = 0;
  std::size_t unknown_count = 0;
  double best_confidence = 0.0;
  std::size_t tie_count = 0;
  double avg_hamming_to_truth = 0.0;  // over all tied argmax completions
  bool exact = false;                 // lowest tied completion equals the truth
  std::uint64_t announced = 0;        // lowest tied completion
};

struct AiaResult {
  std::vector<AiaTarget> targets;
  double mean_avg_hamming = 0.0;
  double baseline = 0.0;  // m'/2, expected distance of a uniform guess
};

namespace attacks_detail {

inline void validate_unknown(std::span<const std::size_t> unknown, std::size_t width) {
  require(!unknown.empty(), ErrorKind::kDomain, "unknown feature set is empty");
  require(unknown.size() <= kMaxUnknown, ErrorKind::kBudget,
          "unknown part of size " + std::to_string(unknown.size()) +
              " exceeds the enumeration cap of " + std::to_string(kMaxUnknown));
  for (std::size_t f : unknown) {
    require(f < width, ErrorKind::kDomain, "unknown feature index " + std::to_string(f) +
                                               " >= width " + std::to_string(width));
  }
}

template <ConfidenceScorer S>
AiaTarget attack_one(const S& scorer, const BitVector& target, std::size_t id,
                     std::span<const std::size_t> unknown) {
  PartialVector portion(target, {unknown.begin(), unknown.end()});
  const auto search = search_completions(scorer, portion);
  const std::uint64_t truth = assignment_bits(portion);
  double dist = 0.0;
  for (std::uint64_t a : search.tied) dist += std::popcount(a ^ truth);
  AiaTarget rec;
  rec.target_id = id;
  rec.unknown_count = portion.unknown_count();
  rec.best_confidence = search.best_confidence;
  rec.tie_count = search.tied.size();
  rec.avg_hamming_to_truth = dist / static_cast<double>(search.tied.size());
  rec.announced = search.tied.front();
  rec.exact = rec.announced == truth;
  return rec;
}

template <ConfidenceScorer S>
std::vector<AiaTarget> attack_all(const S& scorer, const Dataset& train, const Dataset& targets,
                                  std::span<const std::size_t> unknown, bool require_member) {
  validate_unknown(unknown, train.width());
  require(targets.width() == train.width(), ErrorKind::kSchema, "target width mismatch");
  std::vector<AiaTarget> out;
  out.reserve(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (require_member) {
      require(train.contains(targets[i]), ErrorKind::kDomain,
              "target " + std::to_string(i) + " is not a member of the training set");
    }
    out.push_back(attack_one(scorer, targets[i], i, unknown));
  }
  return out;
}

inline GameOutcome assemble(std::string game, const std::vector<AiaTarget>& members,
                            const std::vector<AiaTarget>* population,
                            double population_baseline, auto&& success) {
  GameOutcome out;
  out.game = std::move(game);
  std::size_t member_hits = 0;
  for (const auto& t : members) {
    const bool ok = success(t);
    member_hits += ok ? 1 : 0;
    out.log.push_back({"member:" + std::to_string(t.target_id), 0,
                       static_cast<std::int64_t>(t.announced), ok, t.best_confidence});
  }
  double population_rate = population_baseline;
  if (population != nullptr && !population->empty()) {
    std::size_t hits = 0;
    for (const auto& t : *population) {
      const bool ok = success(t);
      hits += ok ? 1 : 0;
      out.log.push_back({"population:" + std::to_string(t.target_id), 1,
                         static_cast<std::int64_t>(t.announced), ok, t.best_confidence});
    }
    population_rate = static_cast<double>(hits) / static_cast<double>(population->size());
  }
  out.trials = out.log.size();
  out.successes = static_cast<std::size_t>(
      std::count_if(out.log.begin(), out.log.end(), [](const auto& r) { return r.correct; }));
  const double member_rate =
      members.empty() ? 0.0
                      : static_cast<double>(member_hits) / static_cast<double>(members.size());
  out.advantage = member_rate - population_rate;
  return out;
}

}  // namespace attacks_detail

// Exact attribute inference. For each target the adversary enumerates all 2^m' completions
// of its portion and announces the argmax (lowest assignment on ties); a trial
// succeeds on exact recovery. Advantage is the member success rate minus the
// success rate on `population` draws when given, else minus 2^-m'.
template <ConfidenceScorer S>
GameOutcome run_exact_aia(const S& scorer, const Dataset& train, const Dataset& targets,
                          std::span<const std::size_t> unknown,
                          const Dataset* population = nullptr) {
  const auto members = attacks_detail::attack_all(scorer, train, targets, unknown, true);
  std::vector<AiaTarget> pop;
  if (population != nullptr) {
    pop = attacks_detail::attack_all(scorer, train, *population, unknown, false);
  }
  const double baseline = std::ldexp(1.0, -static_cast<int>(unknown.size()));
  return attacks_detail::assemble("exact-aia", members, population ? &pop : nullptr, baseline,
                                  [](const AiaTarget& t) { return t.exact; });
}

// Approximate attribute inference with the same enumeration. Every tied argmax completion is
// kept; a trial succeeds iff their mean Hamming distance to the truth is at
// most alpha.
template <ConfidenceScorer S>
std::pair<GameOutcome, AiaResult> run_approx_aia(const S& scorer, const Dataset& train,
                                                 const Dataset& targets,
                                                 std::span<const std::size_t> unknown,
                                                 double alpha,
                                                 const Dataset* population = nullptr) {
  require(alpha >= 0.0, ErrorKind::kDomain, "alpha must be nonnegative");
  AiaResult result;
  result.targets = attacks_detail::attack_all(scorer, train, targets, unknown, true);
  std::vector<AiaTarget> pop;
  if (population != nullptr) {
    pop = attacks_detail::attack_all(scorer, train, *population, unknown, false);
  }
  const double m_prime = static_cast<double>(unknown.size());
  result.baseline = m_prime / 2.0;
  double sum = 0.0;
  for (const auto& t : result.targets) sum += t.avg_hamming_to_truth;
  result.mean_avg_hamming =
      result.targets.empty() ? 0.0 : sum / static_cast<double>(result.targets.size());

  // Chance that a uniform guess lands within alpha of the truth.
  double chance = 0.0;
  const auto k = static_cast<int>(unknown.size());
  for (int d = 0; d <= k && d <= alpha; ++d) {
    chance += std::exp(std::lgamma(k + 1.0) - std::lgamma(d + 1.0) - std::lgamma(k - d + 1.0) -
                       k * std::log(2.0));
  }
  auto outcome = attacks_detail::assemble(
      "approx-aia", result.targets, population ? &pop : nullptr, chance,
      [alpha](const AiaTarget& t) { return t.avg_hamming_to_truth <= alpha; });
  return {std::move(outcome), std::move(result)};
}

// ---- serialization ----------------------------------------------------------

inline nlohmann::json to_json(const GameOutcome& g, bool include_log) {
  nlohmann::json j = {{"game", g.game},
                      {"trials", g.trials},
                      {"successes", g.successes},
                      {"accuracy", g.accuracy()},
                      {"advantage", g.advantage}};
  if (include_log) {
    nlohmann::json log = nlohmann::json::array();
    for (const auto& r : g.log) {
      log.push_back({{"challenge", r.challenge},
                     {"truth", r.truth},
                     {"guess", r.guess},
                     {"correct", r.correct},
                     {"score", r.score}});
    }
    j["log"] = std::move(log);
  }
  return j;
}

inline nlohmann::json to_json(const AiaResult& r, bool include_targets) {
  nlohmann::json j = {{"targets", r.targets.size()},
                      {"mean_avg_hamming", r.mean_avg_hamming},
                      {"baseline", r.baseline}};
  if (include_targets) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& t : r.targets) {
      rows.push_back({{"target_id", t.target_id},
                      {"unknown_count", t.unknown_count},
                      {"best_confidence", t.best_confidence},
                      {"tie_count", t.tie_count},
                      {"avg_hamming_to_truth", t.avg_hamming_to_truth}});
    }
    j["per_target"] = std::move(rows);
  }
  return j;
}

inline void write_aia_csv(std::ostream& out, const AiaResult& r) {
  out << "target_id,unknown_count,best_confidence,tie_count,avg_hamming_to_truth\n";
  out.precision(17);
  for (const auto& t : r.targets) {
    out << t.target_id << ',' << t.unknown_count << ',' << t.best_confidence << ','
        << t.tie_count << ',' << t.avg_hamming_to_truth << '\n';
  }
}

}  // namespace hmia

#endif  // HMIA_ATTACKS_HPP_
