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

// hmia: command-line harness for the membership and attribute inference
// experiments. Every subcommand resolves the same configuration document and
// works inside the run directory named by its hash.
//
// Exit codes: 0 success, 1 usage, 2 configuration validation, 3 runtime.

#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hmia/config.hpp"
#include "hmia/error.hpp"
#include "hmia/harness.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::string config_path;
  std::string out = "runs";
  bool full = false;
  std::vector<std::string> overrides;
};

std::optional<hmia::json> read_user_config(const std::string& path) {
  if (path.empty()) return std::nullopt;
  std::ifstream in(path);
  hmia::require(in.good(), hmia::ErrorKind::kPath, "cannot open config '" + path + "'");
  try {
    return hmia::json::parse(in);
  } catch (const hmia::json::parse_error& e) {
    hmia::fail(hmia::ErrorKind::kValidation, "config '" + path + "' is not valid JSON: " + e.what());
  }
}

hmia::ExperimentRun open_run(const GlobalOptions& opts) {
  std::vector<std::string> overrides = opts.overrides;
  if (opts.seed) overrides.push_back("seed=" + std::to_string(*opts.seed));
  hmia::ExperimentConfig cfg = hmia::load_config(read_user_config(opts.config_path), overrides);
  return hmia::ExperimentRun(std::move(cfg), opts.out, opts.full,
                             [](const std::string& line) { std::cerr << "[hmia] " << line << '\n'; });
}

int run_stage(const std::string& context, const GlobalOptions& opts,
              const std::function<hmia::json(hmia::ExperimentRun&)>& stage) {
  try {
    hmia::ExperimentRun run = open_run(opts);
    const hmia::json result = stage(run);
    std::cout << "run directory: " << run.dir().string() << '\n' << result.dump(2) << '\n';
    return 0;
  } catch (const hmia::Error& e) {
    std::cerr << "hmia " << context << ": " << e.what() << '\n';
    return e.kind() == hmia::ErrorKind::kValidation ? kExitValidation : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "hmia " << context << ": " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Membership and attribute inference experiments on binary data"};
  app.fallthrough();
  app.require_subcommand(1);
  GlobalOptions opts;
  app.add_option("--seed", opts.seed, "Master seed (overrides the config's seed)");
  app.add_option("--config", opts.config_path, "JSON configuration document");
  app.add_option("--out", opts.out, "Root directory for run directories")->capture_default_str();
  app.add_flag("--full", opts.full, "Include confidence lists and trial logs in JSON outputs");
  app.add_option("--set", opts.overrides, "Override a config field, e.g. attack.iterations=50")
      ->allow_extra_args(false);

  using Stage = std::function<hmia::json(hmia::ExperimentRun&)>;
  std::string context;
  Stage stage;
  auto bind = [&](CLI::App* cmd, std::string name, Stage fn) {
    cmd->callback([&context, &stage, name = std::move(name), fn = std::move(fn)] {
      context = name;
      stage = fn;
    });
  };

  bind(app.add_subcommand("generate", "Generate the synthetic dataset"), "generate",
       [](auto& r) { return r.generate(); });
  bind(app.add_subcommand("label", "Assign class labels with k-means"), "label",
       [](auto& r) { return r.label(); });
  bind(app.add_subcommand("train", "Split, sample and train the target model"), "train",
       [](auto& r) { return r.train(); });

  CLI::App* attack = app.add_subcommand("attack", "Run an inference game");
  attack->require_subcommand(1);
  bind(attack->add_subcommand("mia", "Membership inference (threshold on confidence)"),
       "attack mia", [](auto& r) { return r.attack_mia(); });
  bind(attack->add_subcommand("strong-mia", "Member vs. a neighbor at distance r"),
       "attack strong-mia", [](auto& r) { return r.attack_strong_mia(); });
  bind(attack->add_subcommand("aia", "Exact attribute inference by enumeration"), "attack aia",
       [](auto& r) { return r.attack_aia(); });
  bind(attack->add_subcommand("approx-aia", "Approximate attribute inference"),
       "attack approx-aia", [](auto& r) { return r.attack_approx_aia(); });

  CLI::App* analyze = app.add_subcommand("analyze", "Distance-based analyses");
  analyze->require_subcommand(1);
  bind(analyze->add_subcommand("dist-auc", "AUC per non-member distance to the training set"),
       "analyze dist-auc", [](auto& r) { return r.analyze_dist_auc(); });
  bind(analyze->add_subcommand("histogram", "Histogram of non-member distances"),
       "analyze histogram", [](auto& r) { return r.analyze_histogram(); });
  bind(analyze->add_subcommand("synthetic-auc", "AUC against synthetic neighbors of members"),
       "analyze synthetic-auc", [](auto& r) { return r.analyze_synthetic_auc(); });
  bind(analyze->add_subcommand("conf-profile", "Confidence vs. distance of completions"),
       "analyze conf-profile", [](auto& r) { return r.analyze_conf_profile(); });

  bind(app.add_subcommand("report", "Collate all outputs into summary.json"), "report",
       [](auto& r) { return r.report(); });
  bind(app.add_subcommand("pipeline", "Run every stage, then report"), "pipeline",
       [](auto& r) { return r.pipeline(); });

  CLI::App* show = app.add_subcommand("config", "Print the resolved configuration");
  bool show_config = false;
  show->callback([&] { show_config = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (show_config) {
    try {
      const auto cfg = hmia::load_config(read_user_config(opts.config_path), [&] {
        auto o = opts.overrides;
        if (opts.seed) o.push_back("seed=" + std::to_string(*opts.seed));
        return o;
      }());
      std::cout << hmia::to_json(cfg).dump(2) << '\n';
      return 0;
    } catch (const hmia::Error& e) {
      std::cerr << "hmia config: " << e.what() << '\n';
      return e.kind() == hmia::ErrorKind::kValidation ? kExitValidation : kExitRuntime;
    }
  }
  if (!stage) return kExitUsage;
  return run_stage(context, opts, stage);
}
