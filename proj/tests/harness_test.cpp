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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hmia/config.hpp"
#include "hmia/error.hpp"
#include "hmia/harness.hpp"

namespace hmia {
namespace {

namespace fs = std::filesystem;

// A configuration small enough to run every stage in well under a second.
json tiny_config() {
  return json::parse(R"({
    "dataset": {"synth": {"m": 24, "k": 3, "n": 400, "flip_prob": 0.2}},
    "clustering": {"k": 3},
    "split": {"member_sample": 40, "nonmember_sample": 40},
    "arch": {"hidden": [16, 16]},
    "train": {"max_epochs": 30, "batch_size": 16},
    "attack": {"strong_trials": 50, "unknown_count": 4, "aia_targets": 20, "r_grid": [1, 2],
               "variants_per_distance": 2, "min_bucket": 5, "profile_samples": 16}
  })");
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::path(::testing::TempDir()) / ("hmia_harness_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs `fn` and returns the validation message it throws.
template <typename Fn>
std::string validation_message(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kValidation) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "no error thrown";
  return {};
}

TEST(ConfigTest, DefaultsParseAndRoundTrip) {
  const ExperimentConfig cfg = load_config(std::nullopt, {});
  EXPECT_EQ(cfg.dataset.synth.m, 100u);
  EXPECT_EQ(cfg.arch.hidden.size(), 5u);
  EXPECT_EQ(cfg.attack.iterations, 1u);
  EXPECT_EQ(cfg.attack.distance_grid, default_distance_grid(100));
  // The resolved document reparses to the same configuration.
  const ExperimentConfig again = resolve_config(parse_config(to_json(cfg)));
  EXPECT_EQ(to_json(again), to_json(cfg));
  EXPECT_EQ(config_hash(again), config_hash(cfg));
}

TEST(ConfigTest, DefaultDistanceGridIsClippedToWidth) {
  const auto wide = default_distance_grid(699);
  ASSERT_EQ(wide.size(), 38u);
  EXPECT_EQ(wide.front(), 1u);
  EXPECT_EQ(wide[29], 30u);
  EXPECT_EQ(wide[30], 40u);
  EXPECT_EQ(wide.back(), 300u);
  const auto narrow = default_distance_grid(100);
  EXPECT_EQ(narrow.back(), 100u);
  EXPECT_EQ(narrow.size(), 34u);
  EXPECT_EQ(default_distance_grid(12).size(), 12u);
  EXPECT_EQ(default_radius_grid(100), (std::vector<std::size_t>{1, 2, 4, 8, 16, 32}));
  EXPECT_EQ(default_radius_grid(10), (std::vector<std::size_t>{1, 2, 4, 8}));
}

TEST(ConfigTest, InvalidFlipProbNamesTheField) {
  const auto msg = validation_message(
      [] { load_config(std::nullopt, {"dataset.synth.flip_prob=0.7"}); });
  EXPECT_NE(msg.find("dataset.synth.flip_prob"), std::string::npos) << msg;
}

TEST(ConfigTest, UnknownFieldIsRejected) {
  json user = json::parse(R"({"attack": {"iteratons": 3}})");
  const auto msg = validation_message([&] { load_config(user, {}); });
  EXPECT_NE(msg.find("attack.iteratons"), std::string::npos) << msg;
}

TEST(ConfigTest, WrongTypeNamesTheField) {
  json user = json::parse(R"({"split": {"member_sample": "many"}})");
  const auto msg = validation_message([&] { load_config(user, {}); });
  EXPECT_NE(msg.find("split.member_sample"), std::string::npos) << msg;
}

TEST(ConfigTest, FieldChecks) {
  EXPECT_NE(validation_message([] { load_config(std::nullopt, {"attack.iterations=0"}); })
                .find("attack.iterations"),
            std::string::npos);
  EXPECT_NE(validation_message([] { load_config(std::nullopt, {"arch.activation=\"gelu\""}); })
                .find("arch.activation"),
            std::string::npos);
  EXPECT_NE(validation_message([] { load_config(std::nullopt, {"attack.unknown_count=21"}); })
                .find("attack.unknown_count"),
            std::string::npos);
  EXPECT_NE(validation_message([] { load_config(std::nullopt, {"attack.r_grid=[1,101]"}); })
                .find("attack.r_grid"),
            std::string::npos);
  EXPECT_NE(validation_message([] { load_config(std::nullopt, {"train.batch_size=0"}); })
                .find("train.batch_size"),
            std::string::npos);
  EXPECT_NE(validation_message([] { load_config(std::nullopt, {"no.such.field=1"}); })
                .find("no.such.field"),
            std::string::npos);
  EXPECT_NE(validation_message([] { load_config(std::nullopt, {"dataset.source=path"}); })
                .find("dataset.path"),
            std::string::npos);
}

TEST(ConfigTest, OverridesApplyAfterTheDocument) {
  json user = json::parse(R"({"seed": 5, "attack": {"alpha": 3}})");
  const auto cfg = load_config(user, {"seed=9", "attack.distance_grid=[3,1,2,2]"});
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_DOUBLE_EQ(cfg.attack.alpha, 3.0);
  EXPECT_EQ(cfg.attack.distance_grid, (std::vector<std::size_t>{1, 2, 3}));
}

TEST(ConfigTest, HashDependsOnEveryField) {
  const auto a = load_config(std::nullopt, {});
  const auto b = load_config(std::nullopt, {"seed=2"});
  const auto c = load_config(std::nullopt, {"attack.min_bucket=21"});
  EXPECT_NE(config_hash(a), config_hash(b));
  EXPECT_NE(config_hash(a), config_hash(c));
  EXPECT_EQ(config_hash(a), config_hash(load_config(std::nullopt, {})));
  EXPECT_EQ(config_hash(a).size(), 16u);
}

TEST(ConfigTest, PathSourceRequiresAnExistingFile) {
  try {
    load_config(std::nullopt, {"dataset.source=path", "dataset.path=/nonexistent/x.csv"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kPath);
  }
}

TEST(HarnessTest, CsvCellsBecomeJsonValues) {
  const json rows = harness_detail::csv_to_json("distance,n,auc\n1,30,0.5\n2,3,\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0]["distance"], 1);
  EXPECT_DOUBLE_EQ(rows[0]["auc"].get<double>(), 0.5);
  EXPECT_TRUE(rows[1]["auc"].is_null());
}

TEST(HarnessTest, RunDirectoryHoldsTheResolvedConfig) {
  const auto out = fresh_dir("config");
  ExperimentRun run(load_config(tiny_config(), {}), out);
  EXPECT_EQ(run.dir(), out / run.hash());
  const json written = json::parse(slurp(run.dir() / "config.json"));
  EXPECT_EQ(written, to_json(run.config()));
  // The written document alone replays the run.
  const auto replay = resolve_config(parse_config(written));
  EXPECT_EQ(config_hash(replay), run.hash());
  EXPECT_EQ(written["attack"]["distance_grid"].size(), 24u);
}

TEST(HarnessTest, StagesNeedTheirInputs) {
  const auto out = fresh_dir("missing");
  ExperimentRun run(load_config(tiny_config(), {}), out);
  try {
    run.attack_mia();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kPath) << e.what();
  }
  try {
    run.label();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kPath) << e.what();
  }
}

TEST(HarnessTest, PipelineIsDeterministic) {
  const auto out_a = fresh_dir("det_a");
  const auto out_b = fresh_dir("det_b");
  ExperimentRun a(load_config(tiny_config(), {}), out_a);
  ExperimentRun b(load_config(tiny_config(), {}), out_b);
  a.pipeline();
  b.pipeline();
  EXPECT_EQ(slurp(a.dir() / "summary.json"), slurp(b.dir() / "summary.json"));
  // Idempotent: rerunning in place reproduces the same summary.
  const std::string first = slurp(a.dir() / "summary.json");
  a.pipeline();
  EXPECT_EQ(slurp(a.dir() / "summary.json"), first);
}

TEST(HarnessTest, SummaryCollatesEveryOutput) {
  const auto out = fresh_dir("summary");
  ExperimentRun run(load_config(tiny_config(), {}), out);
  const json summary = run.pipeline();
  const auto& outputs = summary["outputs"];
  for (const char* name : {"mia.json", "strong_mia.csv", "strong_mia.json", "exact_aia.json",
                           "approx_aia.csv", "approx_aia.json", "train.json", "clustering.json",
                           "mrmr.csv"}) {
    EXPECT_TRUE(outputs.contains(name)) << name;
  }
  for (const char* stem : {"dist_auc_", "histogram_", "synthetic_auc_", "conf_profile_"}) {
    EXPECT_TRUE(outputs.contains(stem + run.tag() + ".csv")) << stem;
    EXPECT_TRUE(outputs.contains(stem + run.tag() + ".json")) << stem;
  }
  EXPECT_TRUE(summary["datasets"].contains("iter-0/model.json"));
  EXPECT_EQ(summary["config_hash"], run.hash());
  EXPECT_EQ(outputs["strong_mia.csv"].size(), 2u);
  EXPECT_EQ(outputs["approx_aia.csv"].size(), 20u);
  EXPECT_EQ(run.tag().rfind("synth_s1_g", 0), 0u);
}

TEST(HarnessTest, IterationsResampleAndRetrain) {
  const auto out = fresh_dir("iterations");
  ExperimentRun run(load_config(tiny_config(), {"attack.iterations=3"}), out);
  run.generate();
  run.label();
  run.train();
  const json mia = run.attack_mia();
  ASSERT_EQ(mia["rounds"].size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_TRUE(fs::exists(run.dir() / ("iter-" + std::to_string(i)) / "model.json"));
  }
  // Different rounds see different splits.
  EXPECT_NE(slurp(run.dir() / "iter-0" / "members.csv"),
            slurp(run.dir() / "iter-1" / "members.csv"));
  // The pooled AUC covers every round's confidences.
  const json full = ExperimentRun(load_config(tiny_config(), {"attack.iterations=3"}), out, true)
                        .attack_mia();
  EXPECT_EQ(full["member_confidences"].size(), 120u);
  EXPECT_EQ(full["pooled_auc"], mia["pooled_auc"]);
  // Cached rounds reload to the same model.
  const Iteration again = run.iteration(1);
  EXPECT_EQ(save_model(again.model) + "\n", slurp(run.dir() / "iter-1" / "model.json"));
}

TEST(HarnessTest, LabelsCanBeAssignedAfterTheSplit) {
  const auto out = fresh_dir("deferred");
  ExperimentRun run(load_config(tiny_config(), {"clustering.label_before_split=false",
                                                "attack.mrmr_partition=\"all\""}),
                    out);
  const json summary = run.pipeline();
  EXPECT_FALSE(fs::exists(run.dir() / "labeled.csv"));
  const json& train = summary["outputs"]["train.json"];
  ASSERT_TRUE(train.contains("clustering"));
  EXPECT_EQ(train["clustering"]["k"], 3);
  // Every label comes from the nearest centroid of the training clustering,
  // so members (a subset of train) keep their training labels.
  const Iteration it = run.iteration(0);
  for (std::size_t i = 0; i < it.split.members.size(); ++i) {
    for (std::size_t j = 0; j < it.split.train.size(); ++j) {
      if (it.split.train[j] == it.split.members[i]) {
        EXPECT_EQ(it.split.train.label(j), it.split.members.label(i));
      }
    }
  }
}

TEST(HarnessTest, FileLabelsCanReplaceClustering) {
  const auto out = fresh_dir("filelabels");
  const fs::path csv = fs::path(::testing::TempDir()) / "hmia_harness_labeled.csv";
  {
    std::ofstream f(csv);
    Rng rng(3);
    for (int r = 0; r < 200; ++r) {
      int ones = 0;
      for (int i = 0; i < 12; ++i) {
        const int b = fair_coin(rng) ? 1 : 0;
        ones += b;
        f << b << ',';
      }
      f << (ones >= 6 ? 1 : 0) << '\n';
    }
  }
  json user = tiny_config();
  user["dataset"] = {{"source", "path"}, {"path", csv.string()}, {"has_label", true},
                     {"name", "file"}};
  user["clustering"] = {{"enabled", false}};
  user["split"] = {{"member_sample", 20}, {"nonmember_sample", 20}};
  user["attack"]["aia_targets"] = 10;
  ExperimentRun run(load_config(user, {}), out);
  EXPECT_EQ(run.config().attack.distance_grid.back(), 12u);
  EXPECT_THROW(run.generate(), Error);
  const json summary = run.pipeline();
  EXPECT_EQ(summary["outputs"]["clustering.json"]["source"], "file labels");
}

}  // namespace
}  // namespace hmia
