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

#include "imlca/valuation.hpp"

#include "imlca/errors.hpp"
#include "imlca/numeric.hpp"

namespace imlca {

ValuationView ValuationView::lower(const ReportProfile& profile) {
  ValuationView v;
  v.kind_ = ViewKind::kLower;
  v.profile_ = &profile;
  return v;
}

ValuationView ValuationView::upper(const ReportProfile& profile) {
  ValuationView v;
  v.kind_ = ViewKind::kUpper;
  v.profile_ = &profile;
  return v;
}

ValuationView ValuationView::alpha(const ReportProfile& profile,
                                   double alpha) {
  if (alpha < 0.0 || alpha > 1.0)
    throw InvalidSpecError("alpha must lie in [0, 1]");
  ValuationView v;
  v.kind_ = ViewKind::kAlpha;
  v.profile_ = &profile;
  v.alpha_ = alpha;
  return v;
}

ValuationView ValuationView::perturbed(const ReportProfile& profile,
                                       Allocation reference) {
  if (!is_feasible(reference))
    throw InvalidSpecError("perturbed view needs a feasible reference");
  ValuationView v;
  v.kind_ = ViewKind::kPerturbed;
  v.profile_ = &profile;
  v.reference_ = std::move(reference);
  return v;
}

ValuationView ValuationView::truth(std::vector<const Valuation*> oracles) {
  ValuationView v;
  v.kind_ = ViewKind::kTrue;
  v.oracles_ = std::move(oracles);
  return v;
}

std::size_t ValuationView::bidder_count() const {
  return kind_ == ViewKind::kTrue ? oracles_.size() : profile_->size();
}

bool ValuationView::supported(std::size_t bidder, const Bundle& b) const {
  if (kind_ == ViewKind::kTrue) return true;
  return (*profile_)[bidder].contains(b);
}

double ValuationView::value(std::size_t bidder, const Bundle& b) const {
  if (kind_ == ViewKind::kTrue) return oracles_[bidder]->value(b);
  const IntervalReport& r = (*profile_)[bidder].at(b);
  switch (kind_) {
    case ViewKind::kLower:
      return r.lower;
    case ViewKind::kUpper:
      return r.upper;
    case ViewKind::kAlpha:
      return alpha_ * r.lower + (1.0 - alpha_) * r.upper;
    case ViewKind::kPerturbed:
      return b == reference_->of(bidder) ? r.lower : r.upper;
    default:
      return r.lower;
  }
}

double total_value(const ValuationView& view, const Allocation& a) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.bidder_count(); ++i)
    total += view.value(i, a.of(i));
  return total;
}

double efficiency(const ValuationView& true_view, const Allocation& a,
                  double optimum_value) {
  if (optimum_value <= 0.0)
    throw DegenerateInstanceError("efficiency needs a positive optimum");
  return total_value(true_view, a) / optimum_value;
}

double relative_revenue(const std::vector<double>& payments,
                        double optimum_value) {
  if (optimum_value <= 0.0)
    throw DegenerateInstanceError("relative revenue needs a positive optimum");
  double total = 0.0;
  for (double p : payments) total += p;
  return total / optimum_value;
}

double reporting_uncertainty(const IntervalReport& r) {
  if (r.upper <= 0.0) return 0.0;  // zero-value reports are exact
  return (r.upper - r.lower) / r.upper;
}

}  // namespace imlca
