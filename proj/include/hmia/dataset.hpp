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

#ifndef HMIA_DATASET_HPP_
#define HMIA_DATASET_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hmia/bit_vector.hpp"
#include "hmia/error.hpp"
#include "hmia/rng.hpp"

namespace hmia {

struct Schema {
  std::size_t features = 0;  // m
  std::size_t classes = 0;   // C; 0 while unlabeled
  std::string name;
};

// Ordered multiset of equal-width records with optional class labels.
// Immutable once built; copies share the membership index.
class Dataset {
 public:
  Dataset() = default;

  Dataset(Schema schema, std::vector<BitVector> records,
          std::optional<std::vector<int>> labels = std::nullopt)
      : schema_(std::move(schema)), records_(std::move(records)), labels_(std::move(labels)) {
    require(schema_.features > 0, ErrorKind::kSchema, "dataset feature count must be positive");
    for (std::size_t i = 0; i < records_.size(); ++i) {
      require(records_[i].width() == schema_.features, ErrorKind::kSchema,
              "record " + std::to_string(i) + " has width " +
                  std::to_string(records_[i].width()) + ", schema says " +
                  std::to_string(schema_.features));
    }
    if (labels_) {
      require(labels_->size() == records_.size(), ErrorKind::kSchema,
              "label count " + std::to_string(labels_->size()) + " != record count " +
                  std::to_string(records_.size()));
      for (std::size_t i = 0; i < labels_->size(); ++i) {
        const int y = (*labels_)[i];
        require(y >= 0 && static_cast<std::size_t>(y) < schema_.classes, ErrorKind::kSchema,
                "label " + std::to_string(y) + " at record " + std::to_string(i) +
                    " outside [0, " + std::to_string(schema_.classes) + ")");
      }
    }
    index_ = std::make_shared<const std::unordered_set<BitVector, BitVectorHash>>(
        records_.begin(), records_.end());
  }

  const Schema& schema() const noexcept { return schema_; }
  std::size_t width() const noexcept { return schema_.features; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

  const BitVector& operator[](std::size_t i) const { return records_[i]; }
  std::span<const BitVector> records() const noexcept { return records_; }

  bool has_labels() const noexcept { return labels_.has_value(); }
  std::span<const int> labels() const {
    require(has_labels(), ErrorKind::kDomain, "dataset '" + schema_.name + "' has no labels");
    return *labels_;
  }
  int label(std::size_t i) const { return labels()[i]; }

  bool contains(const BitVector& x) const {
    return index_ != nullptr && index_->contains(x);
  }

  Dataset with_labels(std::vector<int> labels, std::size_t classes) const {
    Schema s = schema_;
    s.classes = classes;
    return Dataset(std::move(s), records_, std::move(labels));
  }

  Dataset without_labels() const {
    Schema s = schema_;
    s.classes = 0;
    return Dataset(std::move(s), records_);
  }

  // Records at the given positions, in that order, labels carried along.
  Dataset subset(std::span<const std::size_t> positions, std::string name = {}) const {
    std::vector<BitVector> recs;
    recs.reserve(positions.size());
    std::optional<std::vector<int>> labs;
    if (labels_) labs.emplace().reserve(positions.size());
    for (std::size_t p : positions) {
      require(p < records_.size(), ErrorKind::kDomain, "subset position out of range");
      recs.push_back(records_[p]);
      if (labs) labs->push_back((*labels_)[p]);
    }
    Schema s = schema_;
    if (!name.empty()) s.name = std::move(name);
    return Dataset(std::move(s), std::move(recs), std::move(labs));
  }

 private:
  Schema schema_;
  std::vector<BitVector> records_;
  std::optional<std::vector<int>> labels_;
  std::shared_ptr<const std::unordered_set<BitVector, BitVectorHash>> index_;
};

// min over members of hamming(x, member); 0 iff x is a member.
inline std::size_t distance_to_dataset(const BitVector& x, const Dataset& data) {
  require(!data.empty(), ErrorKind::kDomain, "distance to an empty dataset");
  require(x.width() == data.width(), ErrorKind::kSchema,
          "vector width " + std::to_string(x.width()) + " vs dataset width " +
              std::to_string(data.width()));
  if (data.contains(x)) return 0;
  std::size_t best = x.width();
  for (const BitVector& member : data.records()) {
    best = std::min(best, hamming(x, member));
    if (best == 1) break;  // 0 already excluded above
  }
  return best;
}

inline constexpr int kNeighborAttempts = 1000;

// Uniform draw from ngb_r(x) \ exclude: flips a uniformly chosen r-subset of
// indices, redrawing on collision with `exclude`.
inline BitVector sample_neighbor(const BitVector& x, std::size_t r, const Dataset& exclude,
                                 Rng& rng, int max_attempts = kNeighborAttempts) {
  require(r >= 1 && r <= x.width(), ErrorKind::kDomain,
          "neighbor radius " + std::to_string(r) + " outside [1, " + std::to_string(x.width()) +
              "]");
  require(exclude.empty() || exclude.width() == x.width(), ErrorKind::kSchema,
          "exclusion set width mismatch");
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    BitVector out = x;
    for (std::size_t i : sample_without_replacement(rng, x.width(), r)) out.flip(i);
    if (!exclude.contains(out)) return out;
  }
  fail(ErrorKind::kExhausted, "no radius-" + std::to_string(r) + " neighbor outside the " +
                                  "exclusion set after " + std::to_string(max_attempts) +
                                  " attempts");
}

// A portion x*: `base` with the features in `unknown` treated as missing.
class PartialVector {
 public:
  PartialVector(BitVector base, std::vector<std::size_t> unknown)
      : base_(std::move(base)), unknown_(std::move(unknown)) {
    require(!unknown_.empty(), ErrorKind::kDomain, "a portion needs at least one unknown feature");
    std::sort(unknown_.begin(), unknown_.end());
    require(std::adjacent_find(unknown_.begin(), unknown_.end()) == unknown_.end(),
            ErrorKind::kDomain, "unknown feature indices must be distinct");
    require(unknown_.back() < base_.width(), ErrorKind::kDomain,
            "unknown feature index " + std::to_string(unknown_.back()) + " >= width " +
                std::to_string(base_.width()));
  }

  const BitVector& base() const noexcept { return base_; }
  std::span<const std::size_t> unknown() const noexcept { return unknown_; }
  std::size_t unknown_count() const noexcept { return unknown_.size(); }

  // The true assignment of the base vector at the unknown indices.
  BitVector base_assignment() const {
    BitVector a(unknown_.size());
    for (std::size_t j = 0; j < unknown_.size(); ++j) a.set(j, base_.get(unknown_[j]));
    return a;
  }

 private:
  BitVector base_;
  std::vector<std::size_t> unknown_;  // sorted
};

// Sets unknown index unknown()[j] to assignment bit j.
inline BitVector complete(const PartialVector& p, const BitVector& assignment) {
  require(assignment.width() == p.unknown_count(), ErrorKind::kDomain,
          "assignment length " + std::to_string(assignment.width()) + " != unknown count " +
              std::to_string(p.unknown_count()));
  BitVector out = p.base();
  auto unknown = p.unknown();
  for (std::size_t j = 0; j < unknown.size(); ++j) out.set(unknown[j], assignment.get(j));
  return out;
}

// Enumeration form: bit j of `assignment` fills unknown()[j].
inline BitVector complete(const PartialVector& p, std::uint64_t assignment) {
  BitVector out = p.base();
  auto unknown = p.unknown();
  for (std::size_t j = 0; j < unknown.size(); ++j) out.set(unknown[j], (assignment >> j) & 1U);
  return out;
}

struct SplitSpec {
  double train_fraction = 0.2;
  std::optional<std::size_t> cap = 10000;
  std::size_t member_sample = 1000;
  std::size_t nonmember_sample = 1000;
  std::uint64_t seed = 0;
};

struct Split {
  Dataset train;
  Dataset test;
  Dataset members;     // drawn from train
  Dataset nonmembers;  // drawn from test
};

// Caps the dataset by uniform subsampling, partitions by position into
// train/test, then draws member/non-member samples without replacement.
inline Split split_and_sample(const Dataset& data, const SplitSpec& spec) {
  require(spec.train_fraction > 0.0 && spec.train_fraction < 1.0, ErrorKind::kDomain,
          "train_fraction must lie in (0, 1)");
  Rng rng(spec.seed);
  const std::size_t n =
      spec.cap ? std::min(*spec.cap, data.size()) : data.size();
  require(n >= 2, ErrorKind::kDomain, "need at least two records to split");
  std::vector<std::size_t> order = sample_without_replacement(rng, data.size(), n);
  const auto n_train = static_cast<std::size_t>(
      std::llround(spec.train_fraction * static_cast<double>(n)));
  require(n_train >= 1 && n_train < n, ErrorKind::kDomain, "split leaves a partition empty");
  require(spec.member_sample <= n_train, ErrorKind::kDomain,
          "member_sample " + std::to_string(spec.member_sample) + " exceeds train size " +
              std::to_string(n_train));
  require(spec.nonmember_sample <= n - n_train, ErrorKind::kDomain,
          "nonmember_sample " + std::to_string(spec.nonmember_sample) + " exceeds test size " +
              std::to_string(n - n_train));

  std::vector<std::size_t> train_pos(order.begin(), order.begin() + n_train);
  std::vector<std::size_t> test_pos(order.begin() + n_train, order.end());
  const std::string& name = data.schema().name;
  Split out;
  out.train = data.subset(train_pos, name + "/train");
  out.test = data.subset(test_pos, name + "/test");
  auto member_pos = sample_without_replacement(rng, n_train, spec.member_sample);
  auto nonmember_pos = sample_without_replacement(rng, n - n_train, spec.nonmember_sample);
  out.members = out.train.subset(member_pos, name + "/members");
  out.nonmembers = out.test.subset(nonmember_pos, name + "/nonmembers");
  return out;
}

// ---- CSV ------------------------------------------------------------------
// Headerless, one record per row, m comma-separated 0/1 values, optionally
// followed by an integer class label.

inline Dataset read_csv(std::istream& in, bool has_label, std::string name,
                        std::size_t classes = 0) {
  std::vector<BitVector> records;
  std::vector<int> labels;
  std::size_t width = 0;
  std::string line;
  std::size_t line_no = 0;
  int max_label = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    const std::size_t row_width = cells.size() - (has_label ? 1 : 0);
    const std::string where = "line " + std::to_string(line_no);
    require(row_width >= 1, ErrorKind::kFormat, where + ": no feature columns");
    if (width == 0) width = row_width;
    require(row_width == width, ErrorKind::kFormat,
            where + ": " + std::to_string(row_width) + " features, expected " +
                std::to_string(width));
    BitVector v(width);
    for (std::size_t i = 0; i < width; ++i) {
      if (cells[i] == "1") {
        v.set(i, true);
      } else {
        require(cells[i] == "0", ErrorKind::kFormat,
                where + ", column " + std::to_string(i) + ": '" + cells[i] + "' is not 0 or 1");
      }
    }
    records.push_back(std::move(v));
    if (has_label) {
      int y = 0;
      try {
        std::size_t used = 0;
        y = std::stoi(cells.back(), &used);
        require(used == cells.back().size(), ErrorKind::kFormat, "trailing characters");
      } catch (const std::logic_error&) {
        fail(ErrorKind::kFormat, where + ": label '" + cells.back() + "' is not an integer");
      }
      require(y >= 0, ErrorKind::kFormat, where + ": negative label");
      labels.push_back(y);
      max_label = std::max(max_label, y);
    }
  }
  require(!records.empty(), ErrorKind::kFormat, "dataset '" + name + "' has no rows");
  Schema schema{width, 0, std::move(name)};
  if (!has_label) return Dataset(std::move(schema), std::move(records));
  schema.classes = std::max(classes, static_cast<std::size_t>(max_label + 1));
  return Dataset(std::move(schema), std::move(records), std::move(labels));
}

inline Dataset read_csv_file(const std::string& path, bool has_label, std::string name,
                             std::size_t classes = 0) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::kPath, "cannot open dataset '" + path + "'");
  return read_csv(in, has_label, std::move(name), classes);
}

inline void write_csv(std::ostream& out, const Dataset& data, bool with_label) {
  require(!with_label || data.has_labels(), ErrorKind::kDomain,
          "cannot write labels of unlabeled dataset '" + data.schema().name + "'");
  std::string row;
  for (std::size_t r = 0; r < data.size(); ++r) {
    row.clear();
    const BitVector& v = data[r];
    for (std::size_t i = 0; i < v.width(); ++i) {
      if (i) row += ',';
      row += v.get(i) ? '1' : '0';
    }
    if (with_label) {
      row += ',';
      row += std::to_string(data.label(r));
    }
    row += '\n';
    out << row;
  }
}

inline void write_csv_file(const std::string& path, const Dataset& data, bool with_label) {
  std::ofstream out(path);
  require(out.good(), ErrorKind::kPath, "cannot write '" + path + "'");
  write_csv(out, data, with_label);
}

}  // namespace hmia

#endif  // HMIA_DATASET_HPP_
