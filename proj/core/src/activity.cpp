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

#include "imlca/activity.hpp"

#include <algorithm>

#include "imlca/allocation.hpp"
#include "imlca/errors.hpp"
#include "imlca/numeric.hpp"

namespace imlca {
namespace {

constexpr double kZeroWidthTol = 1e-9;

double perturbed_value(const ReportSet& reports, const Bundle& x,
                       const Bundle& provisional) {
  const IntervalReport& r = reports.at(x);
  return x == provisional ? r.lower : r.upper;
}

bool interval_irreducible(const ReportSet& reports, const Bundle& x) {
  const IntervalReport& r = reports.at(x);
  return r.upper - r.lower <= kZeroWidthTol;
}

}  // namespace

MrparCheck mrpar_satisfied(const ReportSet& reports,
                           const LinearPrices& prices,
                           const Bundle& provisional) {
  const IntervalReport& prov = reports.at(provisional);
  const double prov_upper_utility =
      prov.upper - prices.of_bundle(provisional);

  std::optional<Bundle> first_witness;
  for (const IntervalReport& cand : reports.reports()) {
    const double lo_utility = cand.lower - prices.of_bundle(cand.bundle);
    bool dominates = true;
    for (const IntervalReport& other : reports.reports()) {
      if (other.bundle == cand.bundle) continue;
      const double up_utility = other.upper - prices.of_bundle(other.bundle);
      if (!value_ge(lo_utility, up_utility)) {
        dominates = false;
        break;
      }
    }
    if (!dominates) continue;
    if (cand.bundle == provisional) return {true, cand.bundle};
    if (value_gt(lo_utility, prov_upper_utility) && !first_witness)
      first_witness = cand.bundle;
  }
  if (first_witness) return {true, *first_witness};
  return {false, std::nullopt};
}

std::vector<DiarError> diar_errors(const ReportSet& reports,
                                   const LinearPrices& prices,
                                   const Bundle& provisional) {
  const double own = perturbed_value(reports, provisional, provisional) -
                     prices.of_bundle(provisional);
  std::vector<DiarError> errors;
  errors.reserve(reports.size());
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const Bundle& x = reports.at(k).bundle;
    const double e =
        perturbed_value(reports, x, provisional) - prices.of_bundle(x) - own;
    errors.push_back({k, e});
  }
  // Exact comparison plus stable sort: ties keep report insertion order.
  std::stable_sort(errors.begin(), errors.end(),
                   [](const DiarError& a, const DiarError& b) {
                     return a.error > b.error;
                   });
  return errors;
}

bool diar_satisfied(const ReportSet& before, const ReportSet& after,
                    const LinearPrices& prices, const Bundle& provisional,
                    double epsilon) {
  if (epsilon <= 0.0) throw InvalidSpecError("epsilon must be positive");
  if (after.size() != before.size())
    throw RefinementViolationError("refinement changed the report set");
  for (std::size_t k = 0; k < before.size(); ++k) {
    const IntervalReport& b = before.at(k);
    const IntervalReport& a = after.at(b.bundle);
    if (a.lower < b.lower - kTieTol || a.upper > b.upper + kTieTol)
      throw RefinementViolationError("refinement widened an interval");
  }

  const std::vector<DiarError> ranked =
      diar_errors(before, prices, provisional);
  const double own_after =
      perturbed_value(after, provisional, provisional) -
      prices.of_bundle(provisional);

  auto irreducible_after = [&](const Bundle& x) {
    return interval_irreducible(after, provisional) &&
           interval_irreducible(after, x);
  };

  bool all_irreducible = true;
  for (const DiarError& e : ranked) {
    const Bundle& x = before.at(e.report_index).bundle;
    const double err_after = perturbed_value(after, x, provisional) -
                             prices.of_bundle(x) - own_after;
    const bool reduced = e.error - err_after >= epsilon - kValueTol;
    if (reduced && all_irreducible) return true;  // clause 1
    if (!irreducible_after(x)) all_irreducible = false;
  }
  return all_irreducible;  // clause 2
}

double convergence_bound(const ReportProfile& reports) {
  auto [lower_alloc, lower_value] =
      wdp_reports(ValuationView::lower(reports), reports, Economy::main());
  ValuationView perturbed = perturbed_view(reports, lower_alloc);
  auto [tilde_alloc, tilde_value] =
      wdp_reports(perturbed, reports, Economy::main());
  (void)tilde_alloc;
  if (tilde_value <= 0.0)
    throw DegenerateInstanceError(
        "convergence bound undefined on a zero-value profile");
  return lower_value / tilde_value;
}

}  // namespace imlca
