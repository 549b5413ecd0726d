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

#include <utility>

#include "imlca/solver/wdp.hpp"
#include "imlca/types.hpp"
#include "imlca/valuation.hpp"

namespace imlca {

// Main economy, or the marginal economy with one bidder omitted.
struct Economy {
  static Economy main() { return Economy{-1}; }
  static Economy marginal(int excluded_bidder) {
    return Economy{excluded_bidder};
  }
  bool is_main() const { return excluded < 0; }
  bool includes(int bidder) const { return bidder != excluded; }

  int excluded = -1;
};

// Exact winner determination over the reported bundles F_R, restricted to
// the economy's bidders (an omitted bidder is fixed to the empty bundle).
std::pair<Allocation, double> wdp_reports(const ValuationView& view,
                                          const ReportProfile& reports,
                                          const Economy& economy);

// v^alpha mix of the reported bounds and its optimal allocation.
std::pair<ValuationView, Allocation> provisional_allocation(
    const ReportProfile& reports, double alpha);

// Lower bound on the reference allocation's own bundle, upper elsewhere.
ValuationView perturbed_view(const ReportProfile& reports,
                             const Allocation& reference);

}  // namespace imlca
