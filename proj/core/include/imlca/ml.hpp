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

#include "imlca/allocation.hpp"
#include "imlca/types.hpp"

namespace imlca {

struct KernelParams {
  double offset = 1.0;           // K(x, y) = (x.y + offset)^2
  double regularization = 100.0; // slack weight C
};

// Quadratic-kernel regression fit to one bidder's interval reports. Each
// report's own interval is its insensitivity tube: the fit pays only for
// predictions outside [lower, upper]. Exposed through the dual coefficients.
class KernelModel {
 public:
  KernelModel() = default;

  double predict(const Bundle& x) const;  // clamped below at 0; empty -> 0
  // Predictions for every bundle of an item_count-item space, indexed by
  // bundle mask.
  std::vector<double> value_table(std::size_t item_count) const;

  const std::vector<Bundle>& training_bundles() const { return training_; }
  const std::vector<double>& dual_coefficients() const { return coeffs_; }
  const KernelParams& params() const { return params_; }

 private:
  friend KernelModel fit_interval_model(const ReportSet&,
                                        const KernelParams&);
  KernelParams params_;
  std::vector<Bundle> training_;
  std::vector<double> coeffs_;  // alpha_k - alphabar_k per training bundle
};

// Fits the two-sided-slack interval regression
//   min 1/2 |f|^2 + C sum_k (xi_k + xibar_k)
//   s.t. lower_k - xi_k <= f(x_k) <= upper_k + xibar_k,  xi, xibar >= 0
// in its dual form. The empty bundle is excluded from training; its
// prediction is clamped to 0.
KernelModel fit_interval_model(const ReportSet& reports,
                               const KernelParams& params);

// Learned-value-maximizing feasible allocation over the full bundle space,
// re-solved per bidder so that no bidder is assigned a bundle it has already
// reported. Returns one bundle per economy member.
std::vector<std::optional<Bundle>> next_query(
    const std::vector<KernelModel>& models, const ReportProfile& reports,
    const Economy& economy);

struct QueryPlan {
  std::vector<std::vector<Bundle>> per_bidder;

  std::size_t total() const {
    std::size_t t = 0;
    for (const auto& v : per_bidder) t += v.size();
    return t;
  }
};

struct QueryPlanParams {
  KernelParams kernel;
  std::size_t q_round = 0;  // per-bidder per-round cap; 0 means bidder count
  std::size_t q_max = 0;    // lifetime cap, excluding the empty bundle
  std::size_t round_index = 0;  // rotates marginal-economy priority
  std::vector<bool> frozen;     // optional; frozen bidders get no queries
};

// One main-economy bundle plus one bundle per marginal economy for every
// active bidder, deduplicated and truncated to the per-round cap; marginal
// economies take turns across rounds when truncation applies.
QueryPlan generate_round_queries(const ReportProfile& reports,
                                 const QueryPlanParams& params);

}  // namespace imlca
