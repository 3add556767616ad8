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

#ifndef HMIA_CONFIG_HPP_
#define HMIA_CONFIG_HPP_

// Experiment configuration: one JSON document, fully defaulted. User documents
// are merge-patched over the defaults, then `--set path=value` overrides are
// applied, and the result is parsed strictly (unknown keys are rejected).

#include <algorithm>
#include <cstdio>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hmia/dataset.hpp"
#include "hmia/error.hpp"
#include "hmia/kmeans.hpp"
#include "hmia/mlp.hpp"
#include "hmia/rng.hpp"
#include "hmia/synthetic.hpp"

namespace hmia {

using nlohmann::json;

struct DatasetSource {
  std::string source = "synth";  // synth | path
  std::string path;
  bool has_label = false;
  std::string name = "synth";
  SynthSpec synth;
};

struct ClusteringConfig {
  bool enabled = true;
  std::size_t k = 10;
  int max_iters = 100;
  double tol = 1e-6;
  // When false, each iteration clusters its training partition only and
  // labels the remaining records by nearest centroid.
  bool label_before_split = true;
};

struct AttackParams {
  std::size_t iterations = 1;
  std::optional<double> threshold;  // learned from the scores when absent
  std::vector<std::size_t> r_grid;  // resolved from the feature count when empty
  std::size_t strong_trials = 1000;
  std::size_t unknown_count = 10;
  double alpha = 2.0;
  std::size_t aia_targets = 200;
  std::vector<std::size_t> distance_grid;
  std::size_t variants_per_distance = 5;
  std::size_t min_bucket = 20;
  std::size_t profile_samples = 1024;
  std::string mrmr_partition = "train";  // train | all
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  DatasetSource dataset;
  ClusteringConfig clustering;
  SplitSpec split;
  MlpArchitecture arch;  // input/output dims filled from the data
  TrainConfig train;
  AttackParams attack;
};

// 1..30 then a coarse tail, clipped to the feature count.
inline std::vector<std::size_t> default_distance_grid(std::size_t m) {
  std::vector<std::size_t> grid;
  for (std::size_t d = 1; d <= 30; ++d) grid.push_back(d);
  for (std::size_t d : {40, 50, 75, 100, 150, 200, 250, 300}) grid.push_back(d);
  std::erase_if(grid, [m](std::size_t d) { return d > m; });
  return grid;
}

// Powers of two up to 32, clipped to the feature count.
inline std::vector<std::size_t> default_radius_grid(std::size_t m) {
  std::vector<std::size_t> grid;
  for (std::size_t r = 1; r <= 32 && r <= m; r *= 2) grid.push_back(r);
  return grid;
}

inline json default_config_json() {
  return json::parse(R"({
    "seed": 1,
    "dataset": {
      "source": "synth",
      "path": "",
      "has_label": false,
      "name": "synth",
      "synth": {"m": 100, "k": 10, "n": 5000, "flip_prob": 0.4}
    },
    "clustering": {"enabled": true, "k": 10, "max_iters": 100, "tol": 1e-6,
                   "label_before_split": true},
    "split": {"train_fraction": 0.2, "cap": 10000, "member_sample": 1000, "nonmember_sample": 1000},
    "arch": {"hidden": [256, 256, 128, 128, 128], "activation": "tanh"},
    "train": {"optimizer": "adam", "learning_rate": 0.001, "batch_size": 64, "max_epochs": 200,
              "target_train_accuracy": 0.99, "l2": 0.0},
    "attack": {
      "iterations": 1,
      "threshold": null,
      "r_grid": null,
      "strong_trials": 1000,
      "unknown_count": 10,
      "alpha": 2.0,
      "aia_targets": 200,
      "distance_grid": null,
      "variants_per_distance": 5,
      "min_bucket": 20,
      "profile_samples": 1024,
      "mrmr_partition": "train"
    }
  })");
}

namespace config_detail {

// Reads every key of `obj` through `take`, then rejects leftovers.
class Reader {
 public:
  Reader(const json& obj, std::string prefix) : obj_(obj), prefix_(std::move(prefix)) {
    require(obj_.is_object(), ErrorKind::kValidation,
            (prefix_.empty() ? std::string("config") : prefix_) + " must be an object");
  }

  template <typename T>
  T take(const std::string& key) {
    const std::string where = prefix_ + key;
    require(obj_.contains(key), ErrorKind::kValidation, where + ": missing");
    seen_.push_back(key);
    try {
      return obj_.at(key).get<T>();
    } catch (const json::exception&) {
      fail(ErrorKind::kValidation, where + ": wrong type (" + obj_.at(key).dump() + ")");
    }
  }

  const json& sub(const std::string& key) {
    require(obj_.contains(key), ErrorKind::kValidation, prefix_ + key + ": missing");
    seen_.push_back(key);
    return obj_.at(key);
  }

  bool is_null(const std::string& key) const { return !obj_.contains(key) || obj_.at(key).is_null(); }

  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      require(std::find(seen_.begin(), seen_.end(), key) != seen_.end(), ErrorKind::kValidation,
              prefix_ + key + ": unknown field");
    }
  }

 private:
  const json& obj_;
  std::string prefix_;
  std::vector<std::string> seen_;
};

inline void check(bool ok, const std::string& message) {
  require(ok, ErrorKind::kValidation, message);
}

}  // namespace config_detail

// Parses a fully merged document. Dimensions that depend on the data (arch
// input/output) are left for the harness.
inline ExperimentConfig parse_config(const json& doc) {
  using config_detail::check;
  using config_detail::Reader;
  ExperimentConfig cfg;
  Reader root(doc, "");
  cfg.seed = root.take<std::uint64_t>("seed");

  Reader ds(root.sub("dataset"), "dataset.");
  cfg.dataset.source = ds.take<std::string>("source");
  cfg.dataset.path = ds.take<std::string>("path");
  cfg.dataset.has_label = ds.take<bool>("has_label");
  cfg.dataset.name = ds.take<std::string>("name");
  Reader sy(ds.sub("synth"), "dataset.synth.");
  cfg.dataset.synth.m = sy.take<std::size_t>("m");
  cfg.dataset.synth.k = sy.take<std::size_t>("k");
  cfg.dataset.synth.n = sy.take<std::size_t>("n");
  cfg.dataset.synth.flip_prob = sy.take<double>("flip_prob");
  sy.finish();
  ds.finish();
  check(cfg.dataset.source == "synth" || cfg.dataset.source == "path",
        "dataset.source: must be 'synth' or 'path'");
  check(cfg.dataset.source != "path" || !cfg.dataset.path.empty(),
        "dataset.path: required when dataset.source is 'path'");
  check(!cfg.dataset.name.empty(), "dataset.name: must be non-empty");
  cfg.dataset.synth.name = cfg.dataset.name;
  if (cfg.dataset.source == "synth") {
    try {
      cfg.dataset.synth.validate();
    } catch (const Error& e) {
      fail(ErrorKind::kValidation, "dataset." + e.message());
    }
  }

  Reader cl(root.sub("clustering"), "clustering.");
  cfg.clustering.enabled = cl.take<bool>("enabled");
  cfg.clustering.k = cl.take<std::size_t>("k");
  cfg.clustering.max_iters = cl.take<int>("max_iters");
  cfg.clustering.tol = cl.take<double>("tol");
  cfg.clustering.label_before_split = cl.take<bool>("label_before_split");
  cl.finish();
  check(cfg.clustering.k >= 2, "clustering.k: must be >= 2");
  check(cfg.clustering.max_iters >= 1, "clustering.max_iters: must be >= 1");
  check(cfg.clustering.tol >= 0.0, "clustering.tol: must be >= 0");
  check(cfg.clustering.enabled || cfg.dataset.has_label,
        "clustering.enabled: labels must come from k-means unless dataset.has_label is set");

  Reader sp(root.sub("split"), "split.");
  cfg.split.train_fraction = sp.take<double>("train_fraction");
  cfg.split.cap = sp.is_null("cap") ? std::nullopt
                                    : std::optional<std::size_t>(sp.take<std::size_t>("cap"));
  if (!cfg.split.cap) sp.sub("cap");
  cfg.split.member_sample = sp.take<std::size_t>("member_sample");
  cfg.split.nonmember_sample = sp.take<std::size_t>("nonmember_sample");
  sp.finish();
  check(cfg.split.train_fraction > 0.0 && cfg.split.train_fraction < 1.0,
        "split.train_fraction: must lie in (0, 1)");
  check(cfg.split.member_sample >= 1, "split.member_sample: must be >= 1");
  check(cfg.split.nonmember_sample >= 1, "split.nonmember_sample: must be >= 1");

  Reader ar(root.sub("arch"), "arch.");
  cfg.arch.hidden = ar.take<std::vector<std::size_t>>("hidden");
  try {
    cfg.arch.activation = parse_activation(ar.take<std::string>("activation"));
  } catch (const Error& e) {
    fail(ErrorKind::kValidation, "arch." + e.message());
  }
  ar.finish();
  check(!cfg.arch.hidden.empty(), "arch.hidden: must be non-empty");
  check(std::all_of(cfg.arch.hidden.begin(), cfg.arch.hidden.end(),
                    [](std::size_t w) { return w >= 1; }),
        "arch.hidden: widths must be >= 1");

  Reader tr(root.sub("train"), "train.");
  const auto opt = tr.take<std::string>("optimizer");
  check(opt == "adam" || opt == "sgd", "train.optimizer: must be 'adam' or 'sgd'");
  cfg.train.optimizer = opt == "adam" ? Optimizer::kAdam : Optimizer::kSgd;
  cfg.train.learning_rate = tr.take<double>("learning_rate");
  cfg.train.batch_size = tr.take<std::size_t>("batch_size");
  cfg.train.max_epochs = tr.take<int>("max_epochs");
  cfg.train.target_train_accuracy = tr.take<double>("target_train_accuracy");
  cfg.train.l2 = tr.take<double>("l2");
  tr.finish();
  cfg.train.validate();

  Reader at(root.sub("attack"), "attack.");
  auto& a = cfg.attack;
  a.iterations = at.take<std::size_t>("iterations");
  if (at.is_null("threshold")) {
    at.sub("threshold");
  } else {
    a.threshold = at.take<double>("threshold");
  }
  if (at.is_null("r_grid")) {
    at.sub("r_grid");
  } else {
    a.r_grid = at.take<std::vector<std::size_t>>("r_grid");
  }
  a.strong_trials = at.take<std::size_t>("strong_trials");
  a.unknown_count = at.take<std::size_t>("unknown_count");
  a.alpha = at.take<double>("alpha");
  a.aia_targets = at.take<std::size_t>("aia_targets");
  if (at.is_null("distance_grid")) {
    at.sub("distance_grid");
  } else {
    a.distance_grid = at.take<std::vector<std::size_t>>("distance_grid");
  }
  a.variants_per_distance = at.take<std::size_t>("variants_per_distance");
  a.min_bucket = at.take<std::size_t>("min_bucket");
  a.profile_samples = at.take<std::size_t>("profile_samples");
  a.mrmr_partition = at.take<std::string>("mrmr_partition");
  at.finish();
  check(a.iterations >= 1, "attack.iterations: must be >= 1");
  check(std::all_of(a.r_grid.begin(), a.r_grid.end(), [](std::size_t r) { return r >= 1; }),
        "attack.r_grid: radii must be >= 1");
  check(a.strong_trials >= 1, "attack.strong_trials: must be >= 1");
  check(a.unknown_count >= 1 && a.unknown_count <= 20, "attack.unknown_count: must lie in [1, 20]");
  check(a.alpha >= 0.0, "attack.alpha: must be >= 0");
  check(a.aia_targets >= 1, "attack.aia_targets: must be >= 1");
  check(std::all_of(a.distance_grid.begin(), a.distance_grid.end(),
                    [](std::size_t d) { return d >= 1; }),
        "attack.distance_grid: distances must be >= 1");
  check(a.variants_per_distance >= 1, "attack.variants_per_distance: must be >= 1");
  check(a.profile_samples >= 1, "attack.profile_samples: must be >= 1");
  check(a.mrmr_partition == "train" || a.mrmr_partition == "all",
        "attack.mrmr_partition: must be 'train' or 'all'");
  root.finish();
  return cfg;
}

inline json to_json(const ExperimentConfig& cfg) {
  const auto& a = cfg.attack;
  return {
      {"seed", cfg.seed},
      {"dataset",
       {{"source", cfg.dataset.source},
        {"path", cfg.dataset.path},
        {"has_label", cfg.dataset.has_label},
        {"name", cfg.dataset.name},
        {"synth",
         {{"m", cfg.dataset.synth.m},
          {"k", cfg.dataset.synth.k},
          {"n", cfg.dataset.synth.n},
          {"flip_prob", cfg.dataset.synth.flip_prob}}}}},
      {"clustering",
       {{"enabled", cfg.clustering.enabled},
        {"k", cfg.clustering.k},
        {"max_iters", cfg.clustering.max_iters},
        {"tol", cfg.clustering.tol},
        {"label_before_split", cfg.clustering.label_before_split}}},
      {"split",
       {{"train_fraction", cfg.split.train_fraction},
        {"cap", cfg.split.cap ? json(*cfg.split.cap) : json(nullptr)},
        {"member_sample", cfg.split.member_sample},
        {"nonmember_sample", cfg.split.nonmember_sample}}},
      {"arch", {{"hidden", cfg.arch.hidden}, {"activation", to_string(cfg.arch.activation)}}},
      {"train",
       {{"optimizer", cfg.train.optimizer == Optimizer::kAdam ? "adam" : "sgd"},
        {"learning_rate", cfg.train.learning_rate},
        {"batch_size", cfg.train.batch_size},
        {"max_epochs", cfg.train.max_epochs},
        {"target_train_accuracy", cfg.train.target_train_accuracy},
        {"l2", cfg.train.l2}}},
      {"attack",
       {{"iterations", a.iterations},
        {"threshold", a.threshold ? json(*a.threshold) : json(nullptr)},
        {"r_grid", a.r_grid.empty() ? json(nullptr) : json(a.r_grid)},
        {"strong_trials", a.strong_trials},
        {"unknown_count", a.unknown_count},
        {"alpha", a.alpha},
        {"aia_targets", a.aia_targets},
        {"distance_grid", a.distance_grid.empty() ? json(nullptr) : json(a.distance_grid)},
        {"variants_per_distance", a.variants_per_distance},
        {"min_bucket", a.min_bucket},
        {"profile_samples", a.profile_samples},
        {"mrmr_partition", a.mrmr_partition}}}};
}

// Applies "a.b.c=value"; the value is parsed as JSON, falling back to a string.
inline void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  require(eq != std::string::npos && eq > 0, ErrorKind::kValidation,
          "override '" + assignment + "' is not of the form path=value");
  std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;
  }
  std::string pointer = "/" + path;
  std::replace(pointer.begin(), pointer.end(), '.', '/');
  const json::json_pointer ptr(pointer);
  require(doc.contains(ptr), ErrorKind::kValidation, path + ": unknown field");
  doc[ptr] = std::move(value);
}

// Defaults <- user document <- overrides.
inline json merge_config(const std::optional<json>& user,
                         const std::vector<std::string>& overrides) {
  json doc = default_config_json();
  if (user) {
    require(user->is_object(), ErrorKind::kValidation, "config document must be an object");
    doc.merge_patch(*user);
  }
  for (const auto& o : overrides) apply_override(doc, o);
  return doc;
}

// Stable 16-hex-digit digest of a resolved config.
inline std::string config_hash(const ExperimentConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(to_json(cfg).dump())));
  return buf;
}

}  // namespace hmia

#endif  // HMIA_CONFIG_HPP_
