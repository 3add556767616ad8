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

#ifndef HMIA_MLP_HPP_
#define HMIA_MLP_HPP_

// Fully-connected softmax classifier: the target model f_D. Training is
// mini-batch Adam (or plain SGD) on mean cross-entropy, in double precision.
// A trained model is immutable and its scoring methods are safe to call from
// any number of threads.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hmia/bit_vector.hpp"
#include "hmia/dataset.hpp"
#include "hmia/error.hpp"
#include "hmia/rng.hpp"

namespace hmia {

enum class Activation { kRelu, kTanh };

inline std::string to_string(Activation a) { return a == Activation::kRelu ? "relu" : "tanh"; }

inline Activation parse_activation(const std::string& name) {
  if (name == "relu") return Activation::kRelu;
  if (name == "tanh") return Activation::kTanh;
  fail(ErrorKind::kValidation, "activation: unknown value '" + name + "' (relu|tanh)");
}

struct MlpArchitecture {
  std::size_t input_dim = 0;
  std::vector<std::size_t> hidden;
  std::size_t output_dim = 0;
  Activation activation = Activation::kRelu;

  void validate() const {
    require(input_dim >= 1, ErrorKind::kValidation, "arch.input_dim must be >= 1");
    require(output_dim >= 1, ErrorKind::kValidation, "arch.output_dim must be >= 1");
    require(!hidden.empty(), ErrorKind::kValidation, "arch.hidden must be non-empty");
    for (std::size_t w : hidden) {
      require(w >= 1, ErrorKind::kValidation, "arch.hidden widths must be >= 1");
    }
  }

  // Layer i maps widths()[i] -> widths()[i + 1].
  std::vector<std::size_t> widths() const {
    std::vector<std::size_t> w{input_dim};
    w.insert(w.end(), hidden.begin(), hidden.end());
    w.push_back(output_dim);
    return w;
  }

  friend bool operator==(const MlpArchitecture&, const MlpArchitecture&) = default;
};

struct DenseLayer {
  Eigen::MatrixXd weights;  // out x in
  Eigen::VectorXd bias;     // out
};

struct TrainMeta {
  int epochs_run = 0;
  double train_accuracy = 0.0;
  std::optional<double> test_accuracy;
  std::vector<double> epoch_loss;  // mean mini-batch loss per epoch
  std::uint64_t seed = 0;
};

enum class Optimizer { kSgd, kAdam };

struct TrainConfig {
  Optimizer optimizer = Optimizer::kAdam;
  double learning_rate = 1e-3;
  std::size_t batch_size = 64;
  int max_epochs = 200;
  double target_train_accuracy = 0.99;
  double l2 = 0.0;  // weight decay on weights, not biases
  std::uint64_t seed = 0;

  void validate() const {
    require(learning_rate > 0.0 && std::isfinite(learning_rate), ErrorKind::kValidation,
            "train.learning_rate must be positive");
    require(batch_size >= 1, ErrorKind::kValidation, "train.batch_size must be >= 1");
    require(max_epochs >= 1, ErrorKind::kValidation, "train.max_epochs must be >= 1");
    require(target_train_accuracy > 0.0 && target_train_accuracy <= 1.0,
            ErrorKind::kValidation, "train.target_train_accuracy must lie in (0, 1]");
    require(l2 >= 0.0, ErrorKind::kValidation, "train.l2 must be nonnegative");
  }
};

// Features as a width x count column matrix.
inline Eigen::MatrixXd to_matrix(std::span<const BitVector> xs) {
  const std::size_t m = xs.empty() ? 0 : xs.front().width();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                              static_cast<Eigen::Index>(xs.size()));
  for (std::size_t c = 0; c < xs.size(); ++c) {
    require(xs[c].width() == m, ErrorKind::kSchema, "mixed widths in input batch");
    for (std::size_t i = 0; i < m; ++i) {
      if (xs[c].get(i)) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = 1.0;
    }
  }
  return out;
}

// Column-wise numerically stable softmax.
inline Eigen::MatrixXd softmax_columns(const Eigen::MatrixXd& logits) {
  Eigen::MatrixXd p(logits.rows(), logits.cols());
  for (Eigen::Index c = 0; c < logits.cols(); ++c) {
    const double top = logits.col(c).maxCoeff();
    p.col(c) = (logits.col(c).array() - top).exp().matrix();
    p.col(c) /= p.col(c).sum();
  }
  return p;
}

class MlpModel {
 public:
  static constexpr int kFormatVersion = 1;

  MlpModel(MlpArchitecture arch, std::vector<DenseLayer> layers, TrainMeta meta = {})
      : arch_(std::move(arch)), layers_(std::move(layers)), meta_(std::move(meta)) {
    arch_.validate();
    const auto w = arch_.widths();
    require(layers_.size() + 1 == w.size(), ErrorKind::kSchema,
            "layer count " + std::to_string(layers_.size()) + " does not match architecture");
    for (std::size_t i = 0; i < layers_.size(); ++i) {
      const auto rows = static_cast<Eigen::Index>(w[i + 1]);
      const auto cols = static_cast<Eigen::Index>(w[i]);
      require(layers_[i].weights.rows() == rows && layers_[i].weights.cols() == cols &&
                  layers_[i].bias.size() == rows,
              ErrorKind::kSchema, "layer " + std::to_string(i) + " shape mismatch");
    }
  }

  static MlpModel zeros(const MlpArchitecture& arch) {
    arch.validate();
    const auto w = arch.widths();
    std::vector<DenseLayer> layers;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      layers.push_back({Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(w[i + 1]),
                                              static_cast<Eigen::Index>(w[i])),
                        Eigen::VectorXd::Zero(static_cast<Eigen::Index>(w[i + 1]))});
    }
    return MlpModel(arch, std::move(layers));
  }

  // Weights uniform in +-sqrt(g / fan_in) (g = 6 for relu, 3 for tanh and for
  // the output layer); biases zero.
  static MlpModel initialized(const MlpArchitecture& arch, std::uint64_t seed) {
    MlpModel model = zeros(arch);
    Rng rng(seed);
    for (std::size_t i = 0; i < model.layers_.size(); ++i) {
      auto& W = model.layers_[i].weights;
      const bool output = i + 1 == model.layers_.size();
      const double gain = (!output && arch.activation == Activation::kRelu) ? 6.0 : 3.0;
      const double limit = std::sqrt(gain / static_cast<double>(W.cols()));
      std::uniform_real_distribution<double> dist(-limit, limit);
      for (Eigen::Index r = 0; r < W.rows(); ++r) {
        for (Eigen::Index c = 0; c < W.cols(); ++c) W(r, c) = dist(rng);
      }
    }
    model.meta_.seed = seed;
    return model;
  }

  const MlpArchitecture& architecture() const noexcept { return arch_; }
  std::span<const DenseLayer> layers() const noexcept { return layers_; }
  std::vector<DenseLayer>& mutable_layers() noexcept { return layers_; }
  const TrainMeta& train_meta() const noexcept { return meta_; }
  TrainMeta& mutable_train_meta() noexcept { return meta_; }
  std::size_t classes() const noexcept { return arch_.output_dim; }

  // Logits for a width x batch input matrix.
  Eigen::MatrixXd logits(const Eigen::MatrixXd& inputs) const {
    require(inputs.rows() == static_cast<Eigen::Index>(arch_.input_dim), ErrorKind::kSchema,
            "input width " + std::to_string(inputs.rows()) + " vs model input_dim " +
                std::to_string(arch_.input_dim));
    Eigen::MatrixXd a = inputs;
    for (std::size_t i = 0; i < layers_.size(); ++i) {
      Eigen::MatrixXd z = layers_[i].weights * a;
      z.colwise() += layers_[i].bias;
      if (i + 1 < layers_.size()) activate(z);
      a = std::move(z);
    }
    return a;
  }

  Eigen::MatrixXd probabilities(const Eigen::MatrixXd& inputs) const {
    return softmax_columns(logits(inputs));
  }

  std::vector<double> forward(const BitVector& x) const {
    check_width(x);
    const Eigen::MatrixXd p = probabilities(to_matrix(std::span(&x, 1)));
    return {p.data(), p.data() + p.size()};
  }

  double max_confidence(const BitVector& x) const {
    check_width(x);
    return max_confidences(std::span(&x, 1)).front();
  }

  std::vector<double> max_confidences(std::span<const BitVector> xs) const {
    std::vector<double> out;
    out.reserve(xs.size());
    constexpr std::size_t kChunk = 512;
    for (std::size_t start = 0; start < xs.size(); start += kChunk) {
      auto chunk = xs.subspan(start, std::min(kChunk, xs.size() - start));
      for (const auto& x : chunk) check_width(x);
      const Eigen::MatrixXd z = logits(to_matrix(chunk));
      for (Eigen::Index c = 0; c < z.cols(); ++c) {
        const double top = z.col(c).maxCoeff();
        out.push_back(1.0 / (z.col(c).array() - top).exp().sum());
      }
    }
    return out;
  }

  int predict(const BitVector& x) const {
    const auto p = forward(x);
    return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
  }

  // Fraction of labeled records whose argmax matches the label.
  double accuracy(const Dataset& data) const {
    if (data.empty()) return 0.0;
    const Eigen::MatrixXd z = logits(to_matrix(data.records()));
    std::size_t hits = 0;
    for (Eigen::Index c = 0; c < z.cols(); ++c) {
      Eigen::Index arg = 0;
      z.col(c).maxCoeff(&arg);
      if (arg == data.label(static_cast<std::size_t>(c))) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(data.size());
  }

  void activate(Eigen::MatrixXd& z) const {
    if (arch_.activation == Activation::kRelu) {
      z = z.cwiseMax(0.0);
    } else {
      z = z.array().tanh().matrix();
    }
  }

 private:
  void check_width(const BitVector& x) const {
    require(x.width() == arch_.input_dim, ErrorKind::kSchema,
            "vector width " + std::to_string(x.width()) + " vs model input_dim " +
                std::to_string(arch_.input_dim));
  }

  MlpArchitecture arch_;
  std::vector<DenseLayer> layers_;
  TrainMeta meta_;
};

// Mean cross-entropy of the batch (columns of `inputs`) plus
// 0.5 * l2 * sum of squared weights. When `grad` is non-null it receives the
// gradient with the same layer shapes as the model.
inline double loss_and_gradient(const MlpModel& model, const Eigen::MatrixXd& inputs,
                                std::span<const int> labels, double l2,
                                std::vector<DenseLayer>* grad) {
  const auto layers = model.layers();
  const std::size_t L = layers.size();
  const Eigen::Index batch = inputs.cols();
  require(static_cast<std::size_t>(batch) == labels.size() && batch > 0, ErrorKind::kSchema,
          "batch/label count mismatch");
  const bool relu = model.architecture().activation == Activation::kRelu;

  // Forward, keeping every layer's activation.
  std::vector<Eigen::MatrixXd> acts;
  acts.reserve(L + 1);
  acts.push_back(inputs);
  for (std::size_t i = 0; i < L; ++i) {
    Eigen::MatrixXd z = layers[i].weights * acts.back();
    z.colwise() += layers[i].bias;
    if (i + 1 < L) model.activate(z);
    acts.push_back(std::move(z));
  }
  const Eigen::MatrixXd& logits = acts.back();

  double loss = 0.0;
  Eigen::MatrixXd delta(logits.rows(), batch);
  for (Eigen::Index c = 0; c < batch; ++c) {
    const int y = labels[static_cast<std::size_t>(c)];
    require(y >= 0 && y < logits.rows(), ErrorKind::kSchema, "label outside model classes");
    const double top = logits.col(c).maxCoeff();
    Eigen::VectorXd e = (logits.col(c).array() - top).exp().matrix();
    const double sum = e.sum();
    loss += std::log(sum) + top - logits(y, c);
    delta.col(c) = e / sum;
    delta(y, c) -= 1.0;
  }
  const double inv_batch = 1.0 / static_cast<double>(batch);
  loss *= inv_batch;
  delta *= inv_batch;
  if (l2 > 0.0) {
    for (const auto& layer : layers) loss += 0.5 * l2 * layer.weights.squaredNorm();
  }
  if (grad == nullptr) return loss;

  grad->resize(L);
  for (std::size_t i = L; i-- > 0;) {
    (*grad)[i].weights = delta * acts[i].transpose();
    (*grad)[i].bias = delta.rowwise().sum();
    if (l2 > 0.0) (*grad)[i].weights += l2 * layers[i].weights;
    if (i == 0) break;
    Eigen::MatrixXd back = layers[i].weights.transpose() * delta;
    const Eigen::MatrixXd& a = acts[i];
    if (relu) {
      back = back.cwiseProduct((a.array() > 0.0).cast<double>().matrix());
    } else {
      back = back.cwiseProduct((1.0 - a.array().square()).matrix());
    }
    delta = std::move(back);
  }
  return loss;
}

// Trains from a seeded initialization until train accuracy reaches the target
// or max_epochs elapse. `eval`, when given, only fills train_meta's test
// accuracy.
inline MlpModel train(const Dataset& train_set, const MlpArchitecture& arch,
                      const TrainConfig& cfg, const Dataset* eval = nullptr) {
  cfg.validate();
  arch.validate();
  require(train_set.has_labels(), ErrorKind::kDomain, "training set has no labels");
  require(!train_set.empty(), ErrorKind::kDomain, "training set is empty");
  require(train_set.width() == arch.input_dim, ErrorKind::kSchema,
          "training width " + std::to_string(train_set.width()) + " vs input_dim " +
              std::to_string(arch.input_dim));
  require(train_set.schema().classes <= arch.output_dim, ErrorKind::kSchema,
          "dataset has more classes than the model outputs");
  require(cfg.batch_size <= train_set.size(), ErrorKind::kValidation,
          "train.batch_size " + std::to_string(cfg.batch_size) + " exceeds training set size " +
              std::to_string(train_set.size()));

  Rng rng(cfg.seed);
  MlpModel model = MlpModel::initialized(arch, rng());
  auto& layers = model.mutable_layers();
  const Eigen::MatrixXd inputs = to_matrix(train_set.records());
  const auto labels = train_set.labels();
  const std::size_t n = train_set.size();

  // Adam moments.
  std::vector<DenseLayer> m1 = MlpModel::zeros(arch).mutable_layers();
  std::vector<DenseLayer> m2 = m1;
  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
  std::int64_t step = 0;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<DenseLayer> grad;
  TrainMeta meta;
  meta.seed = cfg.seed;
  Eigen::MatrixXd batch_x;
  std::vector<int> batch_y;
  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < n; start += cfg.batch_size) {
      const std::size_t len = std::min(cfg.batch_size, n - start);
      batch_x.resize(inputs.rows(), static_cast<Eigen::Index>(len));
      batch_y.resize(len);
      for (std::size_t j = 0; j < len; ++j) {
        batch_x.col(static_cast<Eigen::Index>(j)) =
            inputs.col(static_cast<Eigen::Index>(order[start + j]));
        batch_y[j] = labels[order[start + j]];
      }
      const double loss = loss_and_gradient(model, batch_x, batch_y, cfg.l2, &grad);
      if (!std::isfinite(loss)) {
        fail(ErrorKind::kDiverged, "non-finite loss at epoch " + std::to_string(epoch));
      }
      epoch_loss += loss;
      ++batches;
      ++step;
      for (std::size_t i = 0; i < layers.size(); ++i) {
        if (cfg.optimizer == Optimizer::kSgd) {
          layers[i].weights -= cfg.learning_rate * grad[i].weights;
          layers[i].bias -= cfg.learning_rate * grad[i].bias;
          continue;
        }
        const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(step));
        const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(step));
        auto update = [&](auto& param, auto& g, auto& mom1, auto& mom2) {
          mom1 = kBeta1 * mom1 + (1.0 - kBeta1) * g;
          mom2 = kBeta2 * mom2 + (1.0 - kBeta2) * g.cwiseProduct(g);
          param.array() -= cfg.learning_rate * (mom1.array() / c1) /
                           ((mom2.array() / c2).sqrt() + kEps);
        };
        update(layers[i].weights, grad[i].weights, m1[i].weights, m2[i].weights);
        update(layers[i].bias, grad[i].bias, m1[i].bias, m2[i].bias);
      }
    }
    meta.epoch_loss.push_back(epoch_loss / static_cast<double>(batches));
    meta.epochs_run = epoch;
    meta.train_accuracy = model.accuracy(train_set);
    if (meta.train_accuracy >= cfg.target_train_accuracy) break;
  }
  if (eval != nullptr && !eval->empty()) meta.test_accuracy = model.accuracy(*eval);
  model.mutable_train_meta() = std::move(meta);
  return model;
}

// ---- persistence ------------------------------------------------------------

inline nlohmann::json to_json(const MlpArchitecture& arch) {
  return {{"input_dim", arch.input_dim},
          {"hidden", arch.hidden},
          {"output_dim", arch.output_dim},
          {"activation", to_string(arch.activation)}};
}

inline nlohmann::json to_json(const MlpModel& model) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& layer : model.layers()) {
    std::vector<double> w;
    w.reserve(static_cast<std::size_t>(layer.weights.size()));
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) w.push_back(layer.weights(r, c));
    }
    layers.push_back({{"rows", layer.weights.rows()},
                      {"cols", layer.weights.cols()},
                      {"weights", std::move(w)},
                      {"bias", std::vector<double>(layer.bias.data(),
                                                   layer.bias.data() + layer.bias.size())}});
  }
  const auto& meta = model.train_meta();
  nlohmann::json jmeta = {{"epochs_run", meta.epochs_run},
                          {"train_accuracy", meta.train_accuracy},
                          {"epoch_loss", meta.epoch_loss},
                          {"seed", meta.seed}};
  jmeta["test_accuracy"] = meta.test_accuracy ? nlohmann::json(*meta.test_accuracy) : nullptr;
  return {{"format_version", MlpModel::kFormatVersion},
          {"architecture", to_json(model.architecture())},
          {"layers", std::move(layers)},
          {"train_meta", std::move(jmeta)}};
}

namespace mlp_detail {

template <typename T>
T field(const nlohmann::json& obj, const std::string& key, const std::string& where) {
  require(obj.is_object() && obj.contains(key), ErrorKind::kFormat,
          "missing field '" + where + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorKind::kFormat, "field '" + where + key + "' has the wrong type");
  }
}

}  // namespace mlp_detail

inline MlpModel model_from_json(const nlohmann::json& doc) {
  using mlp_detail::field;
  const int version = field<int>(doc, "format_version", "");
  require(version == MlpModel::kFormatVersion, ErrorKind::kFormat,
          "format_version expected " + std::to_string(MlpModel::kFormatVersion) + ", got " +
              std::to_string(version));
  const auto& ja = doc.contains("architecture") ? doc["architecture"] : nlohmann::json();
  MlpArchitecture arch;
  arch.input_dim = field<std::size_t>(ja, "input_dim", "architecture.");
  arch.hidden = field<std::vector<std::size_t>>(ja, "hidden", "architecture.");
  arch.output_dim = field<std::size_t>(ja, "output_dim", "architecture.");
  try {
    arch.activation = parse_activation(field<std::string>(ja, "activation", "architecture."));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kFormat) throw;
    fail(ErrorKind::kFormat, "field 'architecture.activation': unknown value");
  }
  try {
    arch.validate();
  } catch (const Error& e) {
    fail(ErrorKind::kFormat, std::string("field 'architecture': ") + e.what());
  }

  const auto jl = field<std::vector<nlohmann::json>>(doc, "layers", "");
  const auto widths = arch.widths();
  require(jl.size() + 1 == widths.size(), ErrorKind::kFormat,
          "field 'layers': expected " + std::to_string(widths.size() - 1) + " layers, got " +
              std::to_string(jl.size()));
  std::vector<DenseLayer> layers;
  for (std::size_t i = 0; i < jl.size(); ++i) {
    const std::string where = "layers[" + std::to_string(i) + "].";
    const auto rows = field<std::size_t>(jl[i], "rows", where);
    const auto cols = field<std::size_t>(jl[i], "cols", where);
    require(rows == widths[i + 1] && cols == widths[i], ErrorKind::kFormat,
            "field '" + where + "rows/cols' disagrees with architecture");
    const auto w = field<std::vector<double>>(jl[i], "weights", where);
    const auto b = field<std::vector<double>>(jl[i], "bias", where);
    require(w.size() == rows * cols, ErrorKind::kFormat,
            "field '" + where + "weights' has " + std::to_string(w.size()) + " values");
    require(b.size() == rows, ErrorKind::kFormat,
            "field '" + where + "bias' has " + std::to_string(b.size()) + " values");
    DenseLayer layer{Eigen::MatrixXd(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)),
                     Eigen::VectorXd(static_cast<Eigen::Index>(rows))};
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        layer.weights(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = w[r * cols + c];
      }
      layer.bias(static_cast<Eigen::Index>(r)) = b[r];
    }
    layers.push_back(std::move(layer));
  }

  TrainMeta meta;
  if (doc.contains("train_meta")) {
    const auto& jm = doc["train_meta"];
    meta.epochs_run = field<int>(jm, "epochs_run", "train_meta.");
    meta.train_accuracy = field<double>(jm, "train_accuracy", "train_meta.");
    meta.epoch_loss = field<std::vector<double>>(jm, "epoch_loss", "train_meta.");
    meta.seed = field<std::uint64_t>(jm, "seed", "train_meta.");
    if (jm.contains("test_accuracy") && !jm["test_accuracy"].is_null()) {
      meta.test_accuracy = field<double>(jm, "test_accuracy", "train_meta.");
    }
  } else {
    fail(ErrorKind::kFormat, "missing field 'train_meta'");
  }
  return MlpModel(std::move(arch), std::move(layers), std::move(meta));
}

inline std::string save_model(const MlpModel& model) { return to_json(model).dump(1); }

inline MlpModel load_model(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::kFormat, std::string("model document does not parse: ") + e.what());
  }
  return model_from_json(doc);
}

inline void save_model_file(const MlpModel& model, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), ErrorKind::kPath, "cannot write model '" + path + "'");
  out << save_model(model) << '\n';
}

inline MlpModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::kPath, "cannot open model '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return load_model(text);
}

}  // namespace hmia

#endif  // HMIA_MLP_HPP_
