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

#include "imlca/types.hpp"

#include <bit>

#include "imlca/numeric.hpp"

namespace imlca {

Bundle Bundle::from_indices(std::size_t item_count,
                            std::initializer_list<std::size_t> items) {
  return from_indices(item_count, std::vector<std::size_t>(items));
}

Bundle Bundle::from_indices(std::size_t item_count,
                            const std::vector<std::size_t>& items) {
  Bundle b(item_count);
  for (std::size_t j : items) {
    if (j >= item_count) throw InvalidSpecError("bundle item out of range");
    b.words_[j / 64] |= (std::uint64_t{1} << (j % 64));
  }
  return b;
}

Bundle Bundle::from_mask(std::size_t item_count, std::uint64_t mask) {
  if (item_count > 64) throw InvalidSpecError("from_mask requires m <= 64");
  Bundle b(item_count);
  if (item_count < 64) mask &= (std::uint64_t{1} << item_count) - 1;
  if (!b.words_.empty()) b.words_[0] = mask;
  return b;
}

std::size_t Bundle::cardinality() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Bundle::is_empty() const {
  for (auto w : words_)
    if (w) return false;
  return true;
}

bool Bundle::disjoint_with(const Bundle& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & other.words_[i]) return false;
  return true;
}

std::uint64_t Bundle::to_mask() const {
  if (m_ > 64) throw InvalidSpecError("to_mask requires m <= 64");
  return words_.empty() ? 0 : words_[0];
}

bool Bundle::operator<(const Bundle& other) const {
  if (m_ != other.m_) return m_ < other.m_;
  for (std::size_t i = words_.size(); i-- > 0;) {
    if (words_[i] != other.words_[i]) return words_[i] < other.words_[i];
  }
  return false;
}

std::string Bundle::to_string() const {
  std::string s = "{";
  bool first = true;
  for (std::size_t j = 0; j < m_; ++j) {
    if (contains(j)) {
      if (!first) s += ",";
      s += std::to_string(j);
      first = false;
    }
  }
  s += "}";
  return s;
}

std::size_t BundleHash::operator()(const Bundle& b) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ b.item_count();
  for (std::size_t j = 0; j < b.item_count(); j += 64) {
    std::uint64_t w = 0;
    for (std::size_t k = j; k < std::min(b.item_count(), j + 64); ++k)
      if (b.contains(k)) w |= std::uint64_t{1} << (k - j);
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

ReportSet::ReportSet(int bidder, std::size_t item_count)
    : bidder_(bidder), m_(item_count) {
  IntervalReport empty{Bundle::empty(item_count), 0.0, 0.0};
  index_.emplace(empty.bundle, 0);
  reports_.push_back(std::move(empty));
}

const IntervalReport& ReportSet::at(const Bundle& b) const {
  auto it = index_.find(b);
  if (it == index_.end())
    throw UnsupportedBundleError("bundle " + b.to_string() +
                                 " not reported by bidder " +
                                 std::to_string(bidder_));
  return reports_[it->second];
}

void ReportSet::add(const IntervalReport& report) {
  if (report.bundle.item_count() != m_)
    throw InvalidSpecError("report bundle has wrong item count");
  if (index_.count(report.bundle))
    throw DuplicateQueryError("bundle " + report.bundle.to_string() +
                              " already reported");
  if (report.lower < 0.0 || report.lower > report.upper)
    throw RefinementViolationError("interval must satisfy 0 <= lower <= upper");
  index_.emplace(report.bundle, reports_.size());
  reports_.push_back(report);
}

void ReportSet::tighten(const Bundle& b, double new_lower, double new_upper) {
  auto it = index_.find(b);
  if (it == index_.end())
    throw UnsupportedBundleError("cannot tighten unreported bundle");
  IntervalReport& r = reports_[it->second];
  if (new_lower < r.lower - kTieTol || new_upper > r.upper + kTieTol)
    throw RefinementViolationError("refinement widened an interval");
  if (new_lower > new_upper + kTieTol)
    throw RefinementViolationError("refinement crossed bounds");
  r.lower = std::max(new_lower, r.lower);
  r.upper = std::min(new_upper, r.upper);
  if (r.lower > r.upper) r.lower = r.upper;
}

Allocation Allocation::all_empty(std::size_t bidder_count,
                                 std::size_t item_count) {
  return Allocation(
      std::vector<Bundle>(bidder_count, Bundle::empty(item_count)));
}

bool is_feasible(const Allocation& a) {
  if (a.bidder_count() == 0) return true;
  const std::size_t m = a.of(0).item_count();
  std::vector<bool> used(m, false);
  for (std::size_t i = 0; i < a.bidder_count(); ++i) {
    if (a.of(i).item_count() != m)
      throw InvalidSpecError("allocation mixes bundle lengths");
    for (std::size_t j = 0; j < m; ++j) {
      if (!a.of(i).contains(j)) continue;
      if (used[j]) return false;
      used[j] = true;
    }
  }
  return true;
}

LinearPrices::LinearPrices(std::vector<double> per_item)
    : per_item_(std::move(per_item)) {
  for (double p : per_item_)
    if (p < 0.0) throw InvalidSpecError("linear prices must be nonnegative");
}

double LinearPrices::of_bundle(const Bundle& b) const {
  double total = 0.0;
  for (std::size_t j = 0; j < b.item_count(); ++j)
    if (b.contains(j)) total += per_item_[j];
  return total;
}

}  // namespace imlca
