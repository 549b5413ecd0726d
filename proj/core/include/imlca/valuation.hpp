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

#include <optional>
#include <vector>

#include "imlca/types.hpp"

namespace imlca {

enum class ViewKind { kLower, kUpper, kAlpha, kPerturbed, kTrue };

// Read-only valuation lens over a report profile (or the true oracles).
// Reported-value views are defined only on reported bundles plus the empty
// bundle; the true view is defined everywhere. Non-owning: the profile /
// oracles must outlive the view.
class ValuationView {
 public:
  static ValuationView lower(const ReportProfile& profile);
  static ValuationView upper(const ReportProfile& profile);
  // v^alpha = alpha * lower + (1 - alpha) * upper.
  static ValuationView alpha(const ReportProfile& profile, double alpha);
  // Lower bound on the reference allocation's bundle, upper bound elsewhere.
  static ValuationView perturbed(const ReportProfile& profile,
                                 Allocation reference);
  static ValuationView truth(std::vector<const Valuation*> oracles);

  ViewKind kind() const { return kind_; }
  std::size_t bidder_count() const;
  bool supported(std::size_t bidder, const Bundle& b) const;
  double value(std::size_t bidder, const Bundle& b) const;
  const ReportProfile* profile() const { return profile_; }
  double alpha_mix() const { return alpha_; }
  const std::optional<Allocation>& reference() const { return reference_; }

 private:
  ViewKind kind_ = ViewKind::kLower;
  const ReportProfile* profile_ = nullptr;
  std::vector<const Valuation*> oracles_;
  double alpha_ = 1.0;
  std::optional<Allocation> reference_;
};

// Sum of per-bidder values of 'a' under the view. Throws
// UnsupportedBundleError when a reported-value view lacks some a_i.
double total_value(const ValuationView& view, const Allocation& a);

// True-welfare share of the optimum; 'optimum_value' must be positive.
double efficiency(const ValuationView& true_view, const Allocation& a,
                  double optimum_value);

// Total payments relative to the maximal social welfare.
double relative_revenue(const std::vector<double>& payments,
                        double optimum_value);

// (upper - lower) / upper, defined as 0 for an upper bound of 0.
double reporting_uncertainty(const IntervalReport& r);

}  // namespace imlca
