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

#include <unordered_set>

#include "imlca/activity.hpp"
#include "imlca/rng.hpp"
#include "imlca/types.hpp"

namespace imlca {

// Bell-shaped draw capped to [lo, hi]: truncated normal centered at the
// midpoint with sigma = width/4, resampled into the support.
struct BoundedBell {
  double lo = 0.0;
  double hi = 0.0;

  double sample(Rng& rng) const;
  double midpoint() const { return 0.5 * (lo + hi); }
};

// How a simulated bidder draws its bell-shaped values. Midpoint mode makes
// refinement deterministic for regression tests.
enum class BellMode { kTruncatedNormal, kMidpoint };

// Interface the auction engine drives. Implementations mutate only the
// report set handed to them, and only by tightening.
class Bidder {
 public:
  virtual ~Bidder() = default;
  virtual IntervalReport answer_query(const Bundle& bundle) = 0;
  virtual void refine_mrpar(ReportSet& reports, const LinearPrices& prices,
                            const Bundle& provisional) = 0;
  virtual void refine_diar(ReportSet& reports, const LinearPrices& prices,
                           const Bundle& provisional, double epsilon,
                           const std::vector<DiarError>& ranked) = 0;
  virtual void set_frozen(bool frozen) = 0;
  virtual bool frozen() const = 0;
};

struct SimBidderParams {
  double mu = 0.5;  // reporting uncertainty
  BellMode bell = BellMode::kTruncatedNormal;
};

// Truthful simulated bidder: answers interval queries with half-normal noise
// of scale mu * v(x) around the truth, and tightens bounds with the minimal
// adjustments the activity rules demand. Every emitted bound brackets the
// true value.
class SimBidder : public Bidder {
 public:
  SimBidder(const Valuation* truth, const SimBidderParams& params, Rng rng)
      : truth_(truth), params_(params), rng_(rng) {}

  IntervalReport answer_query(const Bundle& bundle) override;
  void refine_mrpar(ReportSet& reports, const LinearPrices& prices,
                    const Bundle& provisional) override;
  void refine_diar(ReportSet& reports, const LinearPrices& prices,
                   const Bundle& provisional, double epsilon,
                   const std::vector<DiarError>& ranked) override;
  void set_frozen(bool frozen) override { frozen_ = frozen; }
  bool frozen() const override { return frozen_; }

  const Valuation& truth() const { return *truth_; }

 private:
  double draw_bell(double lo, double hi);

  const Valuation* truth_;
  SimBidderParams params_;
  Rng rng_;
  bool frozen_ = false;
  std::unordered_set<Bundle, BundleHash> asked_;
};

}  // namespace imlca
