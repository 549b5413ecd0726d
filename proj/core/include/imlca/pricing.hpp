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

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "imlca/types.hpp"
#include "imlca/valuation.hpp"

namespace imlca {

struct PricingOptions {
  // Wall-clock cap for the positive-count branch and bound; on expiry the
  // incumbent is used and 'suboptimal' is flagged.
  std::optional<std::chrono::milliseconds> count_time_cap =
      std::chrono::milliseconds(60000);
  // Node budget for the same search. The root relaxation plus a few dives
  // almost always finds the minimal pattern; proving minimality can take
  // thousands of nodes for no behavioral gain.
  int count_node_cap = 24;
};

// Result of a price generation procedure. 'delta' is aligned with each
// bidder's report order and holds the clearing violation of every report at
// the returned prices: value(x_ik) - pi(x_ik) - (value(a_i) - pi(a_i)) under
// the procedure's valuation.
struct PriceSolution {
  LinearPrices prices;
  std::vector<std::vector<double>> delta;
  double max_delta = 0.0;
  int positive_count = 0;
  std::vector<std::string> stage_log;
  bool suboptimal = false;
};

// Two-stage approximate clearing prices for allocation 'a' under 'view':
// first minimize the worst violation, then minimize how many reports stay
// violated. Items unallocated under 'a' are priced exactly 0.
PriceSolution approx_clearing_prices(const ValuationView& view,
                                     const Allocation& a,
                                     const ReportProfile& reports,
                                     const PricingOptions& options = {});

// Deterministic unique prices: approximate clearing under v^alpha, then the
// norm-minimal violation vector, then the sum-maximal prices, with a final
// norm-minimal tie break over the sum-maximal face.
PriceSolution unique_prices(const ReportProfile& reports, double alpha,
                            const Allocation& a,
                            const PricingOptions& options = {});

// Effort-reduction prices: after the unique-price core, re-targets the
// perturbed valuation and pushes its violations as negative as possible
// before maximizing prices. 'delta' of the result holds the perturbed-view
// violations consumed by the effort-reduction audit.
PriceSolution effort_reduction_prices(const ReportProfile& reports,
                                      double alpha, const Allocation& a,
                                      double large_constant,
                                      const PricingOptions& options = {});

// Clearing predicate: every bidder weakly prefers its assigned bundle at
// these prices (over its reported bundles), and no reported allocation
// yields more revenue.
bool is_clearing(const LinearPrices& prices, const Allocation& a,
                 const ValuationView& view, const ReportProfile& reports);

}  // namespace imlca
