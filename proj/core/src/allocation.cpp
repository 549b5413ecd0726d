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

#include "imlca/allocation.hpp"

#include "imlca/errors.hpp"

namespace imlca {

std::pair<Allocation, double> wdp_reports(const ValuationView& view,
                                          const ReportProfile& reports,
                                          const Economy& economy) {
  const std::size_t n = reports.size();
  if (!economy.is_main() &&
      (economy.excluded < 0 || economy.excluded >= static_cast<int>(n)))
    throw InvalidSpecError("marginal economy excludes an unknown bidder");

  const std::size_t m = reports.empty() ? 0 : reports[0].item_count();
  WdpProblem problem;
  problem.item_count = m;
  problem.candidates.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!economy.includes(static_cast<int>(i))) {
      problem.candidates[i].push_back({Bundle::empty(m), 0.0});
      continue;
    }
    for (const IntervalReport& r : reports[i].reports())
      problem.candidates[i].push_back(
          {r.bundle, view.value(i, r.bundle)});
  }

  WdpResult res = solve_wdp(problem);
  std::vector<Bundle> bundles;
  bundles.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    bundles.push_back(problem.candidates[i][res.selection[i]].bundle);
  return {Allocation(std::move(bundles)), res.total_weight};
}

std::pair<ValuationView, Allocation> provisional_allocation(
    const ReportProfile& reports, double alpha) {
  ValuationView view = ValuationView::alpha(reports, alpha);
  auto [allocation, value] = wdp_reports(view, reports, Economy::main());
  (void)value;
  return {view, allocation};
}

ValuationView perturbed_view(const ReportProfile& reports,
                             const Allocation& reference) {
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (!reports[i].contains(reference.of(i)))
      throw UnsupportedBundleError(
          "perturbed view reference assigns an unreported bundle");
  }
  return ValuationView::perturbed(reports, reference);
}

}  // namespace imlca
