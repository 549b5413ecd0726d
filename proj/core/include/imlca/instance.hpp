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
#include <vector>

#include "imlca/types.hpp"

namespace imlca {

// Parametric synthetic domain: items on a ring, one contiguous interest arc
// per bidder, uniform per-item base values and a synergy factor rewarding
// larger holdings inside the arc.
struct SyntheticDomainSpec {
  std::size_t items = 12;
  std::size_t bidders = 6;
  std::size_t interest_size = 6;
  double base_value_min = 10.0;
  double base_value_max = 100.0;
  double synergy_min = 0.0;
  double synergy_max = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

// v(x) = (sum of base values over x within the arc) *
//        (1 + synergy * (k - 1) / max(1, |arc| - 1)),  k = |x within arc|.
class SyntheticValuation : public Valuation {
 public:
  SyntheticValuation(std::size_t item_count, std::vector<std::size_t> arc,
                     std::vector<double> base_values, double synergy);
  double value(const Bundle& bundle) const override;

  const std::vector<std::size_t>& interest_arc() const { return arc_; }
  double synergy() const { return synergy_; }

 private:
  std::size_t m_;
  std::vector<double> base_by_item_;  // 0 outside the arc
  std::vector<std::size_t> arc_;
  double synergy_;
  std::size_t arc_size_;
};

struct Instance {
  SyntheticDomainSpec spec;
  std::vector<SyntheticValuation> valuations;

  std::vector<const Valuation*> oracles() const;
};

Instance generate_instance(const SyntheticDomainSpec& spec);

// Exact welfare optimum over every feasible allocation at true values.
// Guarded to items <= 12 and bidders <= 8.
std::pair<Allocation, double> brute_force_optimum(const Instance& instance);

}  // namespace imlca
