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

#include "hmia/mlp.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "support/gradient.hpp"
#include "support/oracles.hpp"

namespace hmia {
namespace {

using ::hmia::testing::random_bits;
using ::hmia::testing::worst_gradient_error;

MlpArchitecture arch(std::size_t in, std::vector<std::size_t> hidden, std::size_t out,
                     Activation act = Activation::kRelu) {
  return MlpArchitecture{in, std::move(hidden), out, act};
}

TEST(ForwardTest, ZeroWeightsGiveUniformConfidence) {
  const auto model = MlpModel::zeros(arch(5, {4, 3}, 10));
  Rng rng(1);
  const auto x = random_bits(5, rng);
  for (double p : model.forward(x)) EXPECT_DOUBLE_EQ(p, 0.1);
  EXPECT_DOUBLE_EQ(model.max_confidence(x), 0.1);
}

TEST(ForwardTest, OutputsAreSimplexPoints) {
  Rng rng(2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto model = MlpModel::initialized(arch(12, {9, 7}, 4, seed % 2 ? Activation::kTanh : Activation::kRelu), seed);
    for (int i = 0; i < 25; ++i) {
      const auto x = random_bits(12, rng);
      const auto p = model.forward(x);
      EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-9);
      for (double v : p) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
      }
      const double mc = model.max_confidence(x);
      EXPECT_DOUBLE_EQ(mc, *std::max_element(p.begin(), p.end()));
      EXPECT_GE(mc, 0.25 - 1e-15);
    }
  }
}

TEST(ForwardTest, HandEvaluatedTinyNetwork) {
  auto model = MlpModel::zeros(arch(2, {1}, 2));
  auto& L = model.mutable_layers();
  L[0].weights << 0.5, -1.0;
  L[0].bias << 0.25;
  L[1].weights << 2.0, -1.0;
  L[1].bias << 0.0, 0.5;
  // x = 10: hidden = relu(0.5 + 0.25) = 0.75; logits = (1.5, -0.25).
  const auto p = model.forward(BitVector::from_string("10"));
  EXPECT_NEAR(p[0], 1.0 / (1.0 + std::exp(-1.75)), 1e-15);
  EXPECT_NEAR(p[1], 1.0 / (1.0 + std::exp(1.75)), 1e-15);
  // x = 01: hidden = relu(-1 + 0.25) = 0; logits = (0, 0.5).
  const auto q = model.forward(BitVector::from_string("01"));
  EXPECT_NEAR(q[1], 1.0 / (1.0 + std::exp(-0.5)), 1e-15);
}

TEST(ForwardTest, WidthMismatchIsSchemaError) {
  const auto model = MlpModel::zeros(arch(5, {4}, 3));
  try {
    model.max_confidence(BitVector(6));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSchema);
  }
}

TEST(ForwardTest, BatchMatchesSingle) {
  const auto model = MlpModel::initialized(arch(30, {16, 16}, 5), 3);
  Rng rng(3);
  std::vector<BitVector> xs;
  for (int i = 0; i < 1100; ++i) xs.push_back(random_bits(30, rng));
  const auto batch = model.max_confidences(xs);
  for (std::size_t i = 0; i < xs.size(); i += 37) EXPECT_EQ(batch[i], model.max_confidence(xs[i]));
}

TEST(GradientTest, MatchesFiniteDifferencesOnSmallNet) {
  EXPECT_LT(worst_gradient_error(arch(2, {8, 8}, 3), 1, 0.0), 1e-4);
}

TEST(GradientTest, MatchesFiniteDifferencesWithTanhAndWeightDecay) {
  EXPECT_LT(worst_gradient_error(arch(6, {5, 4, 3}, 4, Activation::kTanh), 2, 0.01), 1e-4);
}

Dataset separable(std::size_t n, Rng& rng) {
  std::vector<BitVector> xs;
  std::vector<int> ys;
  for (std::size_t i = 0; i < n; ++i) {
    auto x = random_bits(10, rng);
    xs.push_back(x);
    ys.push_back(x.get(0) ? 1 : 0);
  }
  return Dataset(Schema{10, 2, "sep"}, xs, ys);
}

TEST(TrainTest, LearnsSeparableData) {
  Rng rng(4);
  const auto d = separable(200, rng);
  TrainConfig cfg;
  cfg.batch_size = 32;
  cfg.target_train_accuracy = 1.0;
  cfg.learning_rate = 0.01;
  const auto model = train(d, arch(10, {16, 16}, 2), cfg, &d);
  EXPECT_DOUBLE_EQ(model.train_meta().train_accuracy, 1.0);
  EXPECT_LT(model.train_meta().epochs_run, cfg.max_epochs);
  ASSERT_TRUE(model.train_meta().test_accuracy.has_value());
}

TEST(TrainTest, FirstEpochLossNearUniformCrossEntropy) {
  Rng rng(5);
  std::vector<BitVector> xs;
  std::vector<int> ys;
  for (int i = 0; i < 500; ++i) {
    xs.push_back(random_bits(40, rng));
    ys.push_back(i % 8);
  }
  Dataset d(Schema{40, 8, "bal"}, xs, ys);
  TrainConfig cfg;
  cfg.max_epochs = 1;
  cfg.learning_rate = 1e-4;
  const auto model = train(d, arch(40, {64, 64, 32}, 8), cfg);
  EXPECT_NEAR(model.train_meta().epoch_loss.front(), std::log(8.0), 0.1 * std::log(8.0));
}

TEST(TrainTest, DivergenceReportsEpoch) {
  Rng rng(6);
  const auto d = separable(64, rng);
  TrainConfig cfg;
  cfg.optimizer = Optimizer::kSgd;
  cfg.learning_rate = 1e300;
  cfg.batch_size = 8;
  try {
    train(d, arch(10, {8}, 2), cfg);
    FAIL() << "expected divergence";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDiverged);
    EXPECT_NE(std::string(e.what()).find("epoch"), std::string::npos);
  }
}

TEST(TrainTest, DeterministicUnderSeed) {
  Rng rng(7);
  const auto d = separable(120, rng);
  TrainConfig cfg;
  cfg.max_epochs = 5;
  cfg.batch_size = 16;
  cfg.seed = 42;
  const auto a = train(d, arch(10, {8, 8}, 2), cfg);
  const auto b = train(d, arch(10, {8, 8}, 2), cfg);
  for (std::size_t l = 0; l < a.layers().size(); ++l) {
    EXPECT_EQ(a.layers()[l].weights, b.layers()[l].weights);
    EXPECT_EQ(a.layers()[l].bias, b.layers()[l].bias);
  }
}

TEST(TrainTest, RejectsOversizedBatchAndUnlabeledData) {
  Rng rng(8);
  const auto d = separable(10, rng);
  TrainConfig cfg;
  cfg.batch_size = 11;
  EXPECT_THROW(train(d, arch(10, {4}, 2), cfg), Error);
  cfg.batch_size = 4;
  EXPECT_THROW(train(d.without_labels(), arch(10, {4}, 2), cfg), Error);
}

TEST(PersistenceTest, RoundTripIsBitIdentical) {
  Rng rng(9);
  const auto d = separable(100, rng);
  TrainConfig cfg;
  cfg.max_epochs = 3;
  cfg.batch_size = 10;
  const auto model = train(d, arch(10, {12, 6}, 2, Activation::kTanh), cfg, &d);
  const auto loaded = load_model(save_model(model));
  EXPECT_EQ(loaded.architecture(), model.architecture());
  EXPECT_EQ(loaded.train_meta().epochs_run, model.train_meta().epochs_run);
  EXPECT_EQ(loaded.train_meta().test_accuracy, model.train_meta().test_accuracy);
  for (int i = 0; i < 100; ++i) {
    const auto x = random_bits(10, rng);
    EXPECT_EQ(loaded.max_confidence(x), model.max_confidence(x));
  }
}

TEST(PersistenceTest, TruncatedDocumentIsFormatError) {
  const auto text = save_model(MlpModel::initialized(arch(4, {3}, 2), 1));
  try {
    load_model(text.substr(0, text.size() / 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kFormat);
  }
}

TEST(PersistenceTest, VersionMismatchNamesBothVersions) {
  auto doc = to_json(MlpModel::initialized(arch(4, {3}, 2), 1));
  doc["format_version"] = 7;
  try {
    load_model(doc.dump());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kFormat);
    const std::string what = e.what();
    EXPECT_NE(what.find("expected 1"), std::string::npos) << what;
    EXPECT_NE(what.find("got 7"), std::string::npos) << what;
  }
}

TEST(PersistenceTest, ShapeErrorsNameTheField) {
  auto doc = to_json(MlpModel::initialized(arch(4, {3}, 2), 1));
  doc["layers"][1]["bias"] = std::vector<double>{0.0};
  try {
    load_model(doc.dump());
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("layers[1].bias"), std::string::npos) << e.what();
  }
}

}  // namespace
}  // namespace hmia
