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

// Pricing error of one report against a fixed (prices, provisional) pair
// under the perturbed valuation.
struct DiarError {
  std::size_t report_index = 0;
  double error = 0.0;
};

struct MrparCheck {
  bool satisfied = false;
  std::optional<Bundle> witness;
};

// Revealed-preference activity rule: some reported bundle's lower-bound
// utility must weakly dominate every other report's upper-bound utility at
// the prices, weakly against the provisional bundle only when the witness is
// the provisional bundle itself, strictly otherwise.
MrparCheck mrpar_satisfied(const ReportSet& reports, const LinearPrices& prices,
                           const Bundle& provisional);

// Per-report pricing errors under the perturbed valuation with respect to
// 'provisional', sorted descending; ties keep report insertion order.
std::vector<DiarError> diar_errors(const ReportSet& reports,
                                   const LinearPrices& prices,
                                   const Bundle& provisional);

// Delta-improvement rule: ranked by the pre-refinement errors, either some
// report's error dropped by at least epsilon with every higher-ranked report
// shown irreducible (both intervals entering its error at zero width), or
// every report is shown irreducible.
bool diar_satisfied(const ReportSet& before, const ReportSet& after,
                    const LinearPrices& prices, const Bundle& provisional,
                    double epsilon);

// Convergence bound: lower-view optimum value over the perturbed-view
// optimum value with respect to the lower-view optimum; always <= 1.
double convergence_bound(const ReportProfile& reports);

}  // namespace imlca
