// Copyright 2026 The imlca Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <unordered_map>
#include <vector>

#include "imlca/errors.hpp"

namespace imlca {

// Indicator vector over the m items of an auction instance. Immutable after
// construction; two bundles compare item-wise, with item 0 as the least
// significant position of the canonical order.
class Bundle {
 public:
  Bundle() = default;
  explicit Bundle(std::size_t item_count)
      : m_(item_count), words_((item_count + 63) / 64, 0) {}

  static Bundle from_indices(std::size_t item_count,
                             std::initializer_list<std::size_t> items);
  static Bundle from_indices(std::size_t item_count,
                             const std::vector<std::size_t>& items);
  // Low 'item_count' bits of 'mask'; item j <-> bit j. Requires m <= 64.
  static Bundle from_mask(std::size_t item_count, std::uint64_t mask);
  static Bundle empty(std::size_t item_count) { return Bundle(item_count); }

  std::size_t item_count() const { return m_; }
  bool contains(std::size_t item) const {
    return (words_[item / 64] >> (item % 64)) & 1u;
  }
  std::size_t cardinality() const;
  bool is_empty() const;
  bool disjoint_with(const Bundle& other) const;
  std::uint64_t to_mask() const;  // requires m <= 64

  bool operator==(const Bundle& other) const {
    return m_ == other.m_ && words_ == other.words_;
  }
  bool operator!=(const Bundle& other) const { return !(*this == other); }
  // Canonical order used by every deterministic tie-break.
  bool operator<(const Bundle& other) const;

  std::string to_string() const;  // e.g. "{0,3,5}"

 private:
  std::size_t m_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BundleHash {
  std::size_t operator()(const Bundle& b) const;
};

// One interval report (bundle, lower, upper) with 0 <= lower <= upper.
struct IntervalReport {
  Bundle bundle;
  double lower = 0.0;
  double upper = 0.0;
};

// All interval reports of one bidder. The empty bundle is always present
// with the exact value 0; at most one report per distinct bundle; bounds can
// only tighten over time.
class ReportSet {
 public:
  ReportSet() = default;
  ReportSet(int bidder, std::size_t item_count);

  int bidder() const { return bidder_; }
  std::size_t item_count() const { return m_; }

  bool contains(const Bundle& b) const { return index_.count(b) > 0; }
  const IntervalReport& at(const Bundle& b) const;
  const IntervalReport& at(std::size_t k) const { return reports_[k]; }
  std::size_t size() const { return reports_.size(); }
  // Number of reports excluding the implicit empty bundle.
  std::size_t queried_size() const { return reports_.size() - 1; }
  const std::vector<IntervalReport>& reports() const { return reports_; }

  // Adds a new report; throws on duplicates or malformed intervals.
  void add(const IntervalReport& report);
  // Monotone tightening: new_lower >= old lower, new_upper <= old upper.
  void tighten(const Bundle& b, double new_lower, double new_upper);

 private:
  int bidder_ = 0;
  std::size_t m_ = 0;
  std::vector<IntervalReport> reports_;
  std::unordered_map<Bundle, std::size_t, BundleHash> index_;
};

using ReportProfile = std::vector<ReportSet>;

// One bundle per bidder; feasible when no item is assigned twice.
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(std::vector<Bundle> bundles)
      : bundles_(std::move(bundles)) {}
  static Allocation all_empty(std::size_t bidder_count,
                              std::size_t item_count);

  std::size_t bidder_count() const { return bundles_.size(); }
  const Bundle& of(std::size_t bidder) const { return bundles_[bidder]; }
  const std::vector<Bundle>& bundles() const { return bundles_; }

  bool operator==(const Allocation& other) const {
    return bundles_ == other.bundles_;
  }

 private:
  std::vector<Bundle> bundles_;
};

bool is_feasible(const Allocation& a);

// Nonnegative per-item prices; a bundle's price is the sum of its items'.
class LinearPrices {
 public:
  LinearPrices() = default;
  explicit LinearPrices(std::vector<double> per_item);
  static LinearPrices zeros(std::size_t item_count) {
    return LinearPrices(std::vector<double>(item_count, 0.0));
  }

  std::size_t item_count() const { return per_item_.size(); }
  double of_item(std::size_t j) const { return per_item_[j]; }
  double of_bundle(const Bundle& b) const;
  const std::vector<double>& per_item() const { return per_item_; }

 private:
  std::vector<double> per_item_;
};

// Final allocation and payments.
struct Outcome {
  Allocation allocation;
  std::vector<double> payments;
};

// True value oracle v_i over the full bundle space.
class Valuation {
 public:
  virtual ~Valuation() = default;
  virtual double value(const Bundle& b) const = 0;
};

// Table-backed valuation, mainly for fixtures; unlisted bundles value 0.
class TableValuation : public Valuation {
 public:
  explicit TableValuation(std::size_t item_count) : m_(item_count) {}
  void set(const Bundle& b, double v) { table_[b] = v; }
  double value(const Bundle& b) const override {
    auto it = table_.find(b);
    return it == table_.end() ? 0.0 : it->second;
  }
  std::size_t item_count() const { return m_; }

 private:
  std::size_t m_;
  std::unordered_map<Bundle, double, BundleHash> table_;
};

}  // namespace imlca
