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

#ifndef HMIA_HARNESS_HPP_
#define HMIA_HARNESS_HPP_

// Experiment harness: each stage reads its inputs from, and writes its outputs
// to, a run directory named by the hash of the resolved configuration.
//
//   generate  -> data.csv, data.meta.json
//   label     -> labeled.csv, clustering.json
//   train     -> iter-0/{train,test,members,nonmembers}.csv, iter-0/model.json, train.json
//   attack    -> mia.json, strong_mia.{csv,json}, exact_aia.json, approx_aia.{csv,json}
//   analyze   -> dist_auc_*, histogram_*, synthetic_auc_*, conf_profile_* (csv+json)
//   report    -> summary.json
//
// Iteration 0 uses the artifacts persisted by `train`; further iterations
// resample and retrain with seeds derived from (stage, iteration) and are
// cached under iter-<i>/ on first use.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hmia/analysis.hpp"
#include "hmia/attacks.hpp"
#include "hmia/auc.hpp"
#include "hmia/config.hpp"
#include "hmia/dataset.hpp"
#include "hmia/error.hpp"
#include "hmia/feature_select.hpp"
#include "hmia/kmeans.hpp"
#include "hmia/mlp.hpp"
#include "hmia/rng.hpp"
#include "hmia/synthetic.hpp"

namespace hmia {

namespace fs = std::filesystem;

namespace harness_detail {

inline std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::size_t peek_width(const std::string& path, bool has_label) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::kPath, "cannot open dataset '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
    require(cells > (has_label ? 1U : 0U), ErrorKind::kFormat,
            "dataset '" + path + "' has no feature columns");
    return cells - (has_label ? 1 : 0);
  }
  fail(ErrorKind::kFormat, "dataset '" + path + "' has no rows");
}

inline void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorKind::kPath, "cannot write '" + path.string() + "'");
  out << text;
}

inline std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorKind::kPath, "missing artifact '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_json(const fs::path& path, const json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

inline json read_json(const fs::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kFormat, path.string() + ": " + e.what());
  }
}

// A CSV cell as a JSON number when it parses as one, else as a string.
inline json csv_cell(const std::string& cell) {
  if (cell.empty()) return nullptr;
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used == cell.size()) {
      if (cell.find_first_of(".eE") == std::string::npos) return std::stoll(cell);
      return v;
    }
  } catch (const std::logic_error&) {
  }
  return cell;
}

inline json csv_to_json(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  json rows = json::array();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (header.empty()) {
      header = std::move(cells);
      continue;
    }
    json row = json::object();
    for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i) {
      row[header[i]] = csv_cell(cells[i]);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace harness_detail

// Fills data-dependent defaults (the distance grid) and checks fields that
// depend on the feature count.
inline ExperimentConfig resolve_config(ExperimentConfig cfg) {
  const std::size_t m = cfg.dataset.source == "synth"
                            ? cfg.dataset.synth.m
                            : harness_detail::peek_width(cfg.dataset.path, cfg.dataset.has_label);
  auto& a = cfg.attack;
  if (a.distance_grid.empty()) a.distance_grid = default_distance_grid(m);
  if (a.r_grid.empty()) a.r_grid = default_radius_grid(m);
  std::sort(a.distance_grid.begin(), a.distance_grid.end());
  a.distance_grid.erase(std::unique(a.distance_grid.begin(), a.distance_grid.end()),
                        a.distance_grid.end());
  require(!a.distance_grid.empty() && a.distance_grid.back() <= m, ErrorKind::kValidation,
          "attack.distance_grid: distances must lie in [1, " + std::to_string(m) + "]");
  for (std::size_t r : a.r_grid) {
    require(r <= m, ErrorKind::kValidation,
            "attack.r_grid: radius " + std::to_string(r) + " exceeds feature count " +
                std::to_string(m));
  }
  require(a.unknown_count <= m, ErrorKind::kValidation,
          "attack.unknown_count: exceeds feature count " + std::to_string(m));
  require(a.aia_targets <= cfg.split.member_sample, ErrorKind::kValidation,
          "attack.aia_targets: exceeds split.member_sample");
  return cfg;
}

// Loads defaults, merges a user document and overrides, parses and resolves.
inline ExperimentConfig load_config(const std::optional<json>& user,
                                    const std::vector<std::string>& overrides) {
  return resolve_config(parse_config(merge_config(user, overrides)));
}

struct Iteration {
  std::size_t index = 0;
  Split split;
  MlpModel model;
  json clustering;  // per-iteration k-means summary when labeling after the split
};

class ExperimentRun {
 public:
  using Logger = std::function<void(const std::string&)>;

  // Creates <out_root>/<config hash>/ and writes config.json into it.
  ExperimentRun(ExperimentConfig cfg, const fs::path& out_root, bool full = false,
                Logger log = nullptr)
      : cfg_(resolve_config(std::move(cfg))),
        hash_(config_hash(cfg_)),
        dir_(out_root / hash_),
        full_(full),
        log_(std::move(log)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    require(!ec, ErrorKind::kPath, "cannot create run directory '" + dir_.string() + "'");
    harness_detail::write_json(dir_ / "config.json", to_json(cfg_));
  }

  const ExperimentConfig& config() const { return cfg_; }
  const std::string& hash() const { return hash_; }
  const fs::path& dir() const { return dir_; }

  // Suffix carried by analysis outputs: dataset name, master seed, grid hash.
  std::string tag() const {
    std::string name = cfg_.dataset.name;
    for (char& c : name) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '-';
    }
    const json grid = cfg_.attack.distance_grid;
    return name + "_s" + std::to_string(cfg_.seed) + "_g" +
           harness_detail::hex16(fnv1a64(grid.dump())).substr(0, 8);
  }

  std::uint64_t seed(std::string_view stage, std::uint64_t index = 0) const {
    return derive_seed(cfg_.seed, stage, index);
  }

  // ---- stages ----------------------------------------------------------------

  json generate() {
    require(cfg_.dataset.source == "synth", ErrorKind::kValidation,
            "dataset.source: 'generate' needs 'synth', got '" + cfg_.dataset.source + "'");
    SynthSpec spec = cfg_.dataset.synth;
    spec.seed = seed("synth");
    const SyntheticData data = hmia::generate(spec);
    harness_detail::write_text(dir_ / "data.csv", csv_text(data.data, false));
    json meta = generation_metadata(spec, data);
    harness_detail::write_json(dir_ / "data.meta.json", meta);
    say("generate: " + std::to_string(data.data.size()) + " records of width " +
        std::to_string(spec.m));
    meta.erase("prototype_of");
    return meta;
  }

  json label() {
    const Dataset raw = load_raw();
    json out;
    Dataset labeled;
    if (deferred_labels()) {
      out = {{"k", cfg_.clustering.k}, {"scope", "training partition of each iteration"}};
      harness_detail::write_json(dir_ / "clustering.json", out);
      say("label: deferred to each iteration's training partition");
      return out;
    }
    if (cfg_.clustering.enabled) {
      KMeansConfig kc{cfg_.clustering.k, cfg_.clustering.max_iters, seed("kmeans"),
                      cfg_.clustering.tol};
      const KMeansResult result = kmeans_label(raw.without_labels(), kc);
      labeled = apply_labels(raw.without_labels(), result);
      out = clustering_summary(kc, result);
    } else {
      labeled = raw;
      out = {{"k", raw.schema().classes}, {"source", "file labels"}};
    }
    harness_detail::write_text(dir_ / "labeled.csv", csv_text(labeled, true));
    harness_detail::write_json(dir_ / "clustering.json", out);
    say("label: " + std::to_string(labeled.schema().classes) + " classes");
    return out;
  }

  json train() {
    const Iteration it = build_iteration(0);
    persist_iteration(it);
    const json out = train_summary(it);
    harness_detail::write_json(dir_ / "train.json", out);
    return out;
  }

  // Membership game over every iteration; the AUC pools all confidences.
  json attack_mia() {
    std::vector<double> pooled_mem, pooled_non;
    json rounds = json::array();
    double adv_sum = 0.0;
    for (std::size_t i = 0; i < cfg_.attack.iterations; ++i) {
      const Iteration it = iteration(i);
      const auto mem = it.model.max_confidences(it.split.members.records());
      const auto non = it.model.max_confidences(it.split.nonmembers.records());
      const double threshold = cfg_.attack.threshold.value_or(learn_threshold(mem, non));
      const GameOutcome game =
          run_mia_game(it.model, it.split.members, it.split.nonmembers, threshold);
      json r = to_json(game, full_);
      r["iteration"] = i;
      r["threshold"] = threshold;
      r["auc"] = auc(mem, non);
      r["train_accuracy"] = it.model.train_meta().train_accuracy;
      r["test_accuracy"] = it.model.train_meta().test_accuracy.value_or(0.0);
      rounds.push_back(std::move(r));
      adv_sum += game.advantage;
      pooled_mem.insert(pooled_mem.end(), mem.begin(), mem.end());
      pooled_non.insert(pooled_non.end(), non.begin(), non.end());
    }
    const auto n = static_cast<double>(cfg_.attack.iterations);
    json out = {{"iterations", cfg_.attack.iterations},
                {"pooled_auc", auc(pooled_mem, pooled_non)},
                {"mean_advantage", adv_sum / n},
                {"rounds", std::move(rounds)}};
    if (full_) {
      out["member_confidences"] = pooled_mem;
      out["nonmember_confidences"] = pooled_non;
    }
    harness_detail::write_json(dir_ / "mia.json", out);
    say("attack mia: pooled AUC " + std::to_string(out["pooled_auc"].get<double>()));
    return out;
  }

  // Strong membership game for every radius in the grid.
  json attack_strong_mia() {
    json rows = json::array();
    std::ostringstream csv;
    csv.precision(17);
    csv << "r,trials,successes,accuracy,advantage\n";
    for (std::size_t r : cfg_.attack.r_grid) {
      std::size_t trials = 0, successes = 0;
      json logs = json::array();
      for (std::size_t i = 0; i < cfg_.attack.iterations; ++i) {
        const Iteration it = iteration(i);
        Rng rng(seed("strong-mia/r" + std::to_string(r), i));
        const GameOutcome g =
            run_strong_mia_game(it.model, it.split.train, r, cfg_.attack.strong_trials, rng);
        trials += g.trials;
        successes += g.successes;
        if (full_) logs.push_back(to_json(g, true)["log"]);
      }
      const double acc = static_cast<double>(successes) / static_cast<double>(trials);
      json row = {{"r", r},
                  {"trials", trials},
                  {"successes", successes},
                  {"accuracy", acc},
                  {"advantage", 2.0 * acc - 1.0}};
      csv << r << ',' << trials << ',' << successes << ',' << acc << ',' << 2.0 * acc - 1.0
          << '\n';
      if (full_) row["logs"] = std::move(logs);
      rows.push_back(std::move(row));
    }
    json out = {{"iterations", cfg_.attack.iterations}, {"radii", std::move(rows)}};
    harness_detail::write_text(dir_ / "strong_mia.csv", csv.str());
    harness_detail::write_json(dir_ / "strong_mia.json", out);
    say("attack strong-mia: " + std::to_string(cfg_.attack.r_grid.size()) + " radii");
    return out;
  }

  // Exact attribute inference on the top-m' mRMR features; non-members serve as the
  // population for the advantage.
  json attack_aia() {
    json rounds = json::array();
    std::size_t trials = 0, hits = 0, member_targets = 0;
    double adv_sum = 0.0;
    for (std::size_t i = 0; i < cfg_.attack.iterations; ++i) {
      const Iteration it = iteration(i);
      const auto unknown = unknown_features(it);
      const Dataset targets = aia_targets(it.split.members);
      const Dataset population = aia_targets(it.split.nonmembers);
      const GameOutcome g = run_exact_aia(it.model, it.split.train, targets, unknown, &population);
      std::size_t member_hits = 0;
      for (const auto& rec : g.log) {
        if (rec.truth == 0 && rec.correct) ++member_hits;
      }
      hits += member_hits;
      member_targets += targets.size();
      trials += g.trials;
      adv_sum += g.advantage;
      json r = to_json(g, full_);
      r["iteration"] = i;
      r["unknown_features"] = unknown;
      r["member_exact_rate"] =
          static_cast<double>(member_hits) / static_cast<double>(targets.size());
      rounds.push_back(std::move(r));
    }
    json out = {{"iterations", cfg_.attack.iterations},
                {"unknown_count", cfg_.attack.unknown_count},
                {"member_exact_rate",
                 static_cast<double>(hits) / static_cast<double>(member_targets)},
                {"chance", std::ldexp(1.0, -static_cast<int>(cfg_.attack.unknown_count))},
                {"mean_advantage", adv_sum / static_cast<double>(cfg_.attack.iterations)},
                {"rounds", std::move(rounds)}};
    harness_detail::write_json(dir_ / "exact_aia.json", out);
    say("attack aia: member exact rate " +
        std::to_string(out["member_exact_rate"].get<double>()));
    return out;
  }

  // Approximate attribute inference: per-target tie-averaged distance plus success at alpha.
  json attack_approx_aia() {
    json rounds = json::array();
    std::ostringstream csv;
    csv.precision(17);
    csv << "iteration,target_id,unknown_count,best_confidence,tie_count,avg_hamming_to_truth\n";
    double sum = 0.0, adv_sum = 0.0;
    std::size_t count = 0, successes = 0;
    for (std::size_t i = 0; i < cfg_.attack.iterations; ++i) {
      const Iteration it = iteration(i);
      const auto unknown = unknown_features(it);
      const Dataset targets = aia_targets(it.split.members);
      const Dataset population = aia_targets(it.split.nonmembers);
      auto [game, result] = run_approx_aia(it.model, it.split.train, targets, unknown,
                                           cfg_.attack.alpha, &population);
      for (const auto& t : result.targets) {
        csv << i << ',' << t.target_id << ',' << t.unknown_count << ',' << t.best_confidence
            << ',' << t.tie_count << ',' << t.avg_hamming_to_truth << '\n';
        sum += t.avg_hamming_to_truth;
        ++count;
        if (t.avg_hamming_to_truth <= cfg_.attack.alpha) ++successes;
      }
      adv_sum += game.advantage;
      json r = to_json(result, false);
      r["iteration"] = i;
      r["unknown_features"] = unknown;
      r["game"] = to_json(game, full_);
      rounds.push_back(std::move(r));
    }
    json out = {{"iterations", cfg_.attack.iterations},
                {"unknown_count", cfg_.attack.unknown_count},
                {"alpha", cfg_.attack.alpha},
                {"targets", count},
                {"mean_avg_hamming", sum / static_cast<double>(count)},
                {"baseline", static_cast<double>(cfg_.attack.unknown_count) / 2.0},
                {"success_rate", static_cast<double>(successes) / static_cast<double>(count)},
                {"mean_advantage", adv_sum / static_cast<double>(cfg_.attack.iterations)},
                {"rounds", std::move(rounds)}};
    harness_detail::write_text(dir_ / "approx_aia.csv", csv.str());
    harness_detail::write_json(dir_ / "approx_aia.json", out);
    say("attack approx-aia: mean distance " +
        std::to_string(out["mean_avg_hamming"].get<double>()) + " vs baseline " +
        std::to_string(out["baseline"].get<double>()));
    return out;
  }

  // Members vs. sampled non-members, bucketed by non-member distance to D.
  json analyze_dist_auc() {
    StratifiedAucAccumulator acc;
    for (std::size_t i = 0; i < cfg_.attack.iterations; ++i) {
      const Iteration it = iteration(i);
      accumulate_stratified(acc, it.model, it.split.members, it.split.nonmembers,
                            it.split.train);
      acc.end_iteration();
    }
    return write_stratified("dist_auc", acc.finalize(cfg_.attack.min_bucket));
  }

  json analyze_histogram() {
    DistanceHistogram pooled;
    for (std::size_t i = 0; i < cfg_.attack.iterations; ++i) {
      const Iteration it = iteration(i);
      const DistanceHistogram h = distance_histogram(it.split.nonmembers, it.split.train);
      for (const auto& [d, c] : h.counts) pooled.counts[d] += c;
      for (const auto& w : h.warnings) {
        pooled.warnings.push_back("iteration " + std::to_string(i) + ": " + w);
      }
    }
    std::ostringstream csv;
    write_histogram_csv(csv, pooled);
    json counts = json::array();
    for (const auto& [d, c] : pooled.counts) counts.push_back({{"distance", d}, {"count", c}});
    json out = {{"iterations", cfg_.attack.iterations},
                {"total", pooled.total()},
                {"counts", std::move(counts)},
                {"warnings", pooled.warnings}};
    harness_detail::write_text(dir_ / ("histogram_" + tag() + ".csv"), csv.str());
    harness_detail::write_json(dir_ / ("histogram_" + tag() + ".json"), out);
    say("analyze histogram: " + std::to_string(pooled.counts.size()) + " distinct distances");
    return out;
  }

  // Members vs. synthetic neighbors of members at each grid distance.
  json analyze_synthetic_auc() {
    StratifiedAucAccumulator acc;
    std::size_t generated = 0, exhausted = 0;
    for (std::size_t i = 0; i < cfg_.attack.iterations; ++i) {
      const Iteration it = iteration(i);
      Rng rng(seed("synthetic-neighbors", i));
      const auto neighbors = generate_synthetic_neighbors(
          it.split.train, it.split.members.size(), cfg_.attack.distance_grid,
          cfg_.attack.variants_per_distance, rng);
      generated += neighbors.generated;
      exhausted += neighbors.exhausted.size();
      accumulate_buckets(acc, it.model, it.split.members, neighbors.by_distance);
      acc.end_iteration();
    }
    StratifiedAucReport report = acc.finalize(cfg_.attack.min_bucket);
    if (exhausted > 0) {
      report.warnings.push_back(std::to_string(exhausted) +
                                " (member, distance) pair(s) ran out of fresh neighbors");
    }
    json out = write_stratified("synthetic_auc", report);
    out["generated"] = generated;
    harness_detail::write_json(dir_ / ("synthetic_auc_" + tag() + ".json"), out);
    return out;
  }

  // Share of completions at each distance that outscore the true record.
  json analyze_conf_profile() {
    const std::size_t k = cfg_.attack.unknown_count;
    std::vector<double> higher(k + 1, 0.0), total(k + 1, 0.0);
    for (std::size_t i = 0; i < cfg_.attack.iterations; ++i) {
      const Iteration it = iteration(i);
      const auto unknown = unknown_features(it);
      Rng rng(seed("conf-profile", i));
      const auto rows = confidence_vs_distance_profile(
          it.model, aia_targets(it.split.members), unknown, rng, cfg_.attack.profile_samples);
      for (const auto& r : rows) {
        higher[r.distance] += std::round(r.fraction_higher * static_cast<double>(r.n));
        total[r.distance] += static_cast<double>(r.n);
      }
    }
    std::vector<ProfileRow> pooled;
    json rows = json::array();
    for (std::size_t d = 1; d <= k; ++d) {
      ProfileRow row{d, total[d] > 0 ? higher[d] / total[d] : 0.0,
                     static_cast<std::size_t>(total[d])};
      rows.push_back({{"distance", d}, {"fraction_higher", row.fraction_higher}, {"n", row.n}});
      pooled.push_back(row);
    }
    std::ostringstream csv;
    write_profile_csv(csv, pooled);
    json out = {{"iterations", cfg_.attack.iterations},
                {"unknown_count", k},
                {"rows", std::move(rows)}};
    harness_detail::write_text(dir_ / ("conf_profile_" + tag() + ".csv"), csv.str());
    harness_detail::write_json(dir_ / ("conf_profile_" + tag() + ".json"), out);
    say("analyze conf-profile: fraction at d=1 " + std::to_string(pooled.front().fraction_higher));
    return out;
  }

  // Collates every result file of the run into summary.json. Dataset CSVs are
  // summarized by row count and digest; result CSVs are embedded row by row.
  json report() {
    json outputs = json::object();
    json datasets = json::object();
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir_)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
      const std::string rel = fs::relative(path, dir_).generic_string();
      if (rel == "summary.json" || rel == "config.json") continue;
      const std::string text = harness_detail::read_text(path);
      if (is_dataset_file(rel)) {
        datasets[rel] = {{"rows", std::count(text.begin(), text.end(), '\n')},
                         {"fnv1a64", harness_detail::hex16(fnv1a64(text))}};
      } else if (path.extension() == ".json") {
        outputs[rel] = json::parse(text);
      } else if (path.extension() == ".csv") {
        outputs[rel] = harness_detail::csv_to_json(text);
      }
    }
    json out = {{"config_hash", hash_},
                {"config", to_json(cfg_)},
                {"datasets", std::move(datasets)},
                {"outputs", std::move(outputs)}};
    harness_detail::write_json(dir_ / "summary.json", out);
    say("report: " + (dir_ / "summary.json").string());
    return out;
  }

  // Every stage in order, then the report.
  json pipeline() {
    if (cfg_.dataset.source == "synth") generate();
    label();
    train();
    attack_mia();
    attack_strong_mia();
    attack_aia();
    attack_approx_aia();
    analyze_dist_auc();
    analyze_histogram();
    analyze_synthetic_auc();
    analyze_conf_profile();
    return report();
  }

  // ---- artifacts ---------------------------------------------------------------

  Dataset load_raw() const {
    if (cfg_.dataset.source == "synth") {
      return read_csv_file((dir_ / "data.csv").string(), false, cfg_.dataset.name);
    }
    return read_csv_file(cfg_.dataset.path, cfg_.dataset.has_label, cfg_.dataset.name);
  }

  Dataset load_labeled() const {
    const fs::path p = dir_ / "labeled.csv";
    require(fs::exists(p), ErrorKind::kPath, "missing artifact '" + p.string() + "'; run label");
    return read_csv_file(p.string(), true, cfg_.dataset.name, label_count());
  }

  // Iteration 0 must have been produced by train(); later ones are built and
  // cached on demand.
  Iteration iteration(std::size_t i) {
    const fs::path d = iteration_dir(i);
    if (!fs::exists(d / "model.json")) {
      require(i != 0, ErrorKind::kPath,
              "missing artifact '" + (d / "model.json").string() + "'; run train");
      Iteration it = build_iteration(i);
      persist_iteration(it);
      return it;
    }
    Split split;
    const std::string name = cfg_.dataset.name;
    const std::size_t classes = label_count();
    auto read = [&](const char* file, const std::string& suffix) {
      return read_csv_file((d / file).string(), true, name + suffix, classes);
    };
    split.train = read("train.csv", "/train");
    split.test = read("test.csv", "/test");
    split.members = read("members.csv", "/members");
    split.nonmembers = read("nonmembers.csv", "/nonmembers");
    Iteration it{i, std::move(split), load_model_file((d / "model.json").string()), nullptr};
    if (fs::exists(d / "clustering.json")) {
      it.clustering = harness_detail::read_json(d / "clustering.json");
    }
    return it;
  }

  // The attacker's unknown part: top-m' mRMR features of the training
  // partition, or of the whole labeled dataset when so configured.
  FeatureRanking feature_ranking(const Iteration& it) const {
    const std::size_t k = cfg_.attack.unknown_count;
    if (cfg_.attack.mrmr_partition == "train") return mrmr_rank(it.split.train, k);
    if (!deferred_labels()) return mrmr_rank(load_labeled(), k);
    // Labels exist per iteration only; rank on the union of both partitions.
    std::vector<BitVector> recs(it.split.train.records().begin(), it.split.train.records().end());
    recs.insert(recs.end(), it.split.test.records().begin(), it.split.test.records().end());
    std::vector<int> labels(it.split.train.labels().begin(), it.split.train.labels().end());
    labels.insert(labels.end(), it.split.test.labels().begin(), it.split.test.labels().end());
    Schema s = it.split.train.schema();
    s.name = cfg_.dataset.name;
    return mrmr_rank(Dataset(std::move(s), std::move(recs), std::move(labels)), k);
  }

  // Also records iteration 0's ranking as mrmr.csv.
  std::vector<std::size_t> unknown_features(const Iteration& it) const {
    const FeatureRanking ranking = feature_ranking(it);
    if (it.index == 0) {
      std::ostringstream csv;
      write_ranking_csv(csv, ranking);
      harness_detail::write_text(dir_ / "mrmr.csv", csv.str());
    }
    return ranking.top(cfg_.attack.unknown_count);
  }

 private:
  static bool is_dataset_file(const std::string& rel) {
    return rel == "data.csv" || rel == "data.meta.json" || rel == "labeled.csv" ||
           rel.rfind("iter-", 0) == 0;
  }

  static std::string csv_text(const Dataset& data, bool with_label) {
    std::ostringstream out;
    write_csv(out, data, with_label);
    return out.str();
  }

  bool deferred_labels() const {
    return cfg_.clustering.enabled && !cfg_.clustering.label_before_split;
  }

  static json clustering_summary(const KMeansConfig& kc, const KMeansResult& result) {
    std::vector<std::size_t> sizes(kc.k, 0);
    for (int a : result.assignments) ++sizes[static_cast<std::size_t>(a)];
    return {{"k", kc.k},
            {"seed", kc.seed},
            {"iterations", result.iterations},
            {"inertia", result.inertia},
            {"inertia_history", result.inertia_history},
            {"cluster_sizes", sizes}};
  }

  // Clusters the training partition and labels every part of the split by
  // nearest final centroid.
  Split label_after_split(Split split, std::size_t i, json& summary) const {
    KMeansConfig kc{cfg_.clustering.k, cfg_.clustering.max_iters, seed("kmeans", i),
                    cfg_.clustering.tol};
    const KMeansResult result = kmeans_label(split.train, kc);
    summary = clustering_summary(kc, result);
    auto relabel = [&](const Dataset& d) {
      std::vector<int> labels;
      labels.reserve(d.size());
      for (const auto& x : d.records()) labels.push_back(assign(result.centroids, x));
      return d.with_labels(std::move(labels), kc.k);
    };
    split.train = relabel(split.train);
    split.test = relabel(split.test);
    split.members = relabel(split.members);
    split.nonmembers = relabel(split.nonmembers);
    return split;
  }

  std::size_t label_count() const {
    if (cfg_.clustering.enabled) return cfg_.clustering.k;
    return 0;
  }

  fs::path iteration_dir(std::size_t i) const { return dir_ / ("iter-" + std::to_string(i)); }

  Dataset aia_targets(const Dataset& pool) const {
    std::vector<std::size_t> pos(std::min(cfg_.attack.aia_targets, pool.size()));
    for (std::size_t j = 0; j < pos.size(); ++j) pos[j] = j;
    return pool.subset(pos);
  }

  Iteration build_iteration(std::size_t i) {
    const bool deferred = deferred_labels();
    const Dataset pool = deferred ? load_raw().without_labels() : load_labeled();
    SplitSpec spec = cfg_.split;
    spec.seed = seed("split", i);
    Split split = split_and_sample(pool, spec);
    json clustering;
    if (deferred) split = label_after_split(std::move(split), i, clustering);
    MlpArchitecture arch = cfg_.arch;
    arch.input_dim = pool.width();
    arch.output_dim =
        std::max<std::size_t>(deferred ? cfg_.clustering.k : pool.schema().classes, 2);
    TrainConfig tc = cfg_.train;
    tc.seed = seed("train", i);
    say("train: iteration " + std::to_string(i) + " on " + std::to_string(split.train.size()) +
        " records");
    MlpModel model = hmia::train(split.train, arch, tc, &split.test);
    Iteration it{i, std::move(split), std::move(model), std::move(clustering)};
    const auto& meta = it.model.train_meta();
    say("train: iteration " + std::to_string(i) + " epochs " + std::to_string(meta.epochs_run) +
        ", train accuracy " + std::to_string(meta.train_accuracy) + ", test accuracy " +
        std::to_string(meta.test_accuracy.value_or(0.0)));
    return it;
  }

  void persist_iteration(const Iteration& it) const {
    const fs::path d = iteration_dir(it.index);
    std::error_code ec;
    fs::create_directories(d, ec);
    require(!ec, ErrorKind::kPath, "cannot create '" + d.string() + "'");
    harness_detail::write_text(d / "train.csv", csv_text(it.split.train, true));
    harness_detail::write_text(d / "test.csv", csv_text(it.split.test, true));
    harness_detail::write_text(d / "members.csv", csv_text(it.split.members, true));
    harness_detail::write_text(d / "nonmembers.csv", csv_text(it.split.nonmembers, true));
    if (!it.clustering.is_null()) harness_detail::write_json(d / "clustering.json", it.clustering);
    // The model is written last: its presence marks the iteration complete.
    save_model_file(it.model, (d / "model.json").string());
  }

  static json train_summary(const Iteration& it) {
    const auto& meta = it.model.train_meta();
    json out = {{"iteration", it.index},
            {"train_size", it.split.train.size()},
            {"test_size", it.split.test.size()},
            {"members", it.split.members.size()},
            {"nonmembers", it.split.nonmembers.size()},
            {"epochs_run", meta.epochs_run},
            {"train_accuracy", meta.train_accuracy},
            {"test_accuracy", meta.test_accuracy.value_or(0.0)},
            {"final_loss", meta.epoch_loss.empty() ? 0.0 : meta.epoch_loss.back()},
            {"seed", meta.seed}};
    if (!it.clustering.is_null()) out["clustering"] = it.clustering;
    return out;
  }

  json write_stratified(const std::string& stem, const StratifiedAucReport& report) {
    std::ostringstream csv;
    write_stratified_csv(csv, report);
    json out = to_json(report, full_);
    harness_detail::write_text(dir_ / (stem + "_" + tag() + ".csv"), csv.str());
    harness_detail::write_json(dir_ / (stem + "_" + tag() + ".json"), out);
    say("analyze " + stem + ": " + std::to_string(report.per_bucket.size()) + " buckets");
    return out;
  }

  void say(const std::string& line) const {
    if (log_) log_(line);
  }

  ExperimentConfig cfg_;
  std::string hash_;
  fs::path dir_;
  bool full_ = false;
  Logger log_;
};

}  // namespace hmia

#endif  // HMIA_HARNESS_HPP_
