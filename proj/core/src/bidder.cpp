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

#include "imlca/bidder.hpp"

#include <algorithm>
#include <cmath>

#include "imlca/errors.hpp"
#include "imlca/numeric.hpp"

namespace imlca {
namespace {

// Strictness offset of the revealed-preference heuristic. Must exceed the
// strict-comparison margin of the rule check or the heuristic could tighten
// to a margin the verifier rejects.
constexpr double kEta = 1e-5;

}  // namespace

double BoundedBell::sample(Rng& rng) const {
  double a = lo, b = hi;
  if (a > b) std::swap(a, b);
  if (b - a <= 0.0) return a;
  const double mid = 0.5 * (a + b);
  const double sigma = (b - a) / 4.0;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double draw = mid + sigma * rng.next_normal();
    if (draw >= a && draw <= b) return draw;
  }
  return mid;
}

double SimBidder::draw_bell(double lo, double hi) {
  if (params_.bell == BellMode::kMidpoint) {
    double a = lo, b = hi;
    if (a > b) std::swap(a, b);
    return 0.5 * (a + b);
  }
  return BoundedBell{lo, hi}.sample(rng_);
}

IntervalReport SimBidder::answer_query(const Bundle& bundle) {
  if (asked_.count(bundle))
    throw DuplicateQueryError("bundle queried twice: " + bundle.to_string());
  asked_.insert(bundle);
  const double v = truth_->value(bundle);
  const double sigma = params_.mu * v;
  if (sigma <= 0.0) return {bundle, v, v};
  const double z1 = std::fabs(rng_.next_normal()) * sigma;
  const double z2 = std::fabs(rng_.next_normal()) * sigma;
  return {bundle, std::max(0.0, v - z1), v + z2};
}

void SimBidder::refine_mrpar(ReportSet& reports, const LinearPrices& prices,
                             const Bundle& provisional) {
  if (frozen_) throw FrozenBidderError("frozen bidder asked to refine");
  if (reports.size() <= 1) return;  // only the empty bundle: nothing to show

  auto true_utility = [&](const Bundle& x) {
    return truth_->value(x) - prices.of_bundle(x);
  };

  // Preferred bundle by true utility; the provisional bundle wins ties.
  std::size_t best = 0;
  for (std::size_t k = 1; k < reports.size(); ++k)
    if (true_utility(reports.at(k).bundle) >
        true_utility(reports.at(best).bundle))
      best = k;
  const double max_utility = true_utility(reports.at(best).bundle);
  if (reports.contains(provisional) &&
      true_utility(provisional) >= max_utility - kValueTol)
    best = reports.reports().size();  // sentinel: use the provisional bundle
  const Bundle preferred = best == reports.reports().size()
                               ? provisional
                               : reports.at(best).bundle;

  double second = -kInf;
  double max_upper_utility = -kInf;
  for (const IntervalReport& r : reports.reports()) {
    if (r.bundle == preferred) continue;
    second = std::max(second, true_utility(r.bundle));
    max_upper_utility =
        std::max(max_upper_utility, r.upper - prices.of_bundle(r.bundle));
  }

  double break_utility = draw_bell(second, true_utility(preferred));
  if (max_upper_utility < break_utility) break_utility = max_upper_utility;
  const IntervalReport& pref_report = reports.at(preferred);
  const double pref_lower_utility =
      pref_report.lower - prices.of_bundle(preferred);
  if (break_utility < pref_lower_utility) break_utility = pref_lower_utility;

  double eta = 0.0;
  if (preferred != provisional && pref_lower_utility <= max_upper_utility)
    eta = kEta;

  // Raise the preferred bundle's lower bound, cap every other upper bound.
  const double new_lower =
      std::min(truth_->value(preferred),
               break_utility + prices.of_bundle(preferred) + eta);
  reports.tighten(preferred, std::max(pref_report.lower, new_lower),
                  pref_report.upper);
  std::vector<Bundle> bundles;
  for (const IntervalReport& r : reports.reports())
    if (r.bundle != preferred) bundles.push_back(r.bundle);
  for (const Bundle& x : bundles) {
    const IntervalReport& r = reports.at(x);
    const double cap = break_utility + prices.of_bundle(x) - eta;
    const double new_upper =
        std::max(truth_->value(x), std::min(r.upper, cap));
    reports.tighten(x, r.lower, std::min(r.upper, new_upper));
  }
}

void SimBidder::refine_diar(ReportSet& reports, const LinearPrices& prices,
                            const Bundle& provisional, double epsilon,
                            const std::vector<DiarError>& ranked) {
  if (frozen_) throw FrozenBidderError("frozen bidder asked to refine");

  auto current_error = [&](const Bundle& x) {
    const IntervalReport& prov = reports.at(provisional);
    const IntervalReport& r = reports.at(x);
    const double own = prov.lower - prices.of_bundle(provisional);
    const double val = x == provisional ? r.lower : r.upper;
    return val - prices.of_bundle(x) - own;
  };
  auto tighten_to_truth = [&](const Bundle& x) {
    const double v = truth_->value(x);
    reports.tighten(x, v, v);
  };

  for (const DiarError& e : ranked) {
    const Bundle x = reports.at(e.report_index).bundle;
    // Already reduced enough this round (by the revealed-preference pass).
    if (e.error - current_error(x) >= epsilon - kValueTol) break;

    const IntervalReport& prov = reports.at(provisional);
    const IntervalReport& r = reports.at(x);
    const double upper_slack =
        x == provisional ? 0.0 : r.upper - truth_->value(x);
    const double lower_slack = truth_->value(provisional) - prov.lower;

    if (x != provisional && upper_slack + lower_slack >= epsilon - kTieTol) {
      // Reduce this error by exactly epsilon, splitting the tightening
      // between the two bounds at random.
      const double share = draw_bell(0.0, 1.0);
      double cut_upper = std::min(upper_slack, share * epsilon);
      double cut_lower = std::min(lower_slack, epsilon - cut_upper);
      cut_upper = std::min(upper_slack, epsilon - cut_lower);
      reports.tighten(x, r.lower, r.upper - cut_upper);
      reports.tighten(provisional, prov.lower + cut_lower, prov.upper);
      break;
    }
    // Cannot move by epsilon: show it by revealing both bundles exactly.
    tighten_to_truth(x);
    tighten_to_truth(provisional);
  }
}

}  // namespace imlca
