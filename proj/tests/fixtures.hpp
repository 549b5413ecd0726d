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

#include <memory>
#include <vector>

#include "imlca/types.hpp"

namespace imlca::testing {

// Two items {A=0, B=1}, two bidders.
// Bidder 1: v(A)=10, v(B)=4, v(AB)=20. Bidder 2: v(A)=6, v(B)=8, v(AB)=12.
// Efficient allocation: bidder 1 takes AB, welfare 20.
struct TwoItemFixture {
  std::size_t m = 2;
  Bundle a = Bundle::from_indices(2, {0});
  Bundle b = Bundle::from_indices(2, {1});
  Bundle ab = Bundle::from_indices(2, {0, 1});
  Bundle none = Bundle::empty(2);
  TableValuation v1{2};
  TableValuation v2{2};

  TwoItemFixture() {
    v1.set(a, 10.0);
    v1.set(b, 4.0);
    v1.set(ab, 20.0);
    v2.set(a, 6.0);
    v2.set(b, 8.0);
    v2.set(ab, 12.0);
  }

  std::vector<const Valuation*> oracles() const { return {&v1, &v2}; }

  // Interval reports: R1 = {(AB,15,25), (A,8,12)}, R2 = {(AB,10,14), (B,6,9)}.
  ReportProfile interval_reports() const {
    ReportProfile profile;
    profile.emplace_back(0, m);
    profile[0].add({ab, 15.0, 25.0});
    profile[0].add({a, 8.0, 12.0});
    profile.emplace_back(1, m);
    profile[1].add({ab, 10.0, 14.0});
    profile[1].add({b, 6.0, 9.0});
    return profile;
  }

  // Zero-width reports at the truth on the same bundles.
  ReportProfile exact_reports() const {
    ReportProfile profile;
    profile.emplace_back(0, m);
    profile[0].add({ab, 20.0, 20.0});
    profile[0].add({a, 10.0, 10.0});
    profile.emplace_back(1, m);
    profile[1].add({ab, 12.0, 12.0});
    profile[1].add({b, 8.0, 8.0});
    return profile;
  }

  // Zero-width truthful reports on every bundle.
  ReportProfile full_exact_reports() const {
    ReportProfile profile;
    profile.emplace_back(0, m);
    profile.emplace_back(1, m);
    const TableValuation* vs[2] = {&v1, &v2};
    for (int i = 0; i < 2; ++i)
      for (const Bundle& x : {a, b, ab})
        profile[i].add({x, vs[i]->value(x), vs[i]->value(x)});
    return profile;
  }
};

}  // namespace imlca::testing
