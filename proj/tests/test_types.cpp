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

#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "imlca/rng.hpp"
#include "imlca/valuation.hpp"

using namespace imlca;
using imlca::testing::TwoItemFixture;

TEST_CASE("bundles are immutable indicator vectors with canonical order") {
  const Bundle a = Bundle::from_indices(3, {0});
  const Bundle b = Bundle::from_indices(3, {1});
  const Bundle ab = Bundle::from_indices(3, {0, 1});
  CHECK(a.cardinality() == 1);
  CHECK(ab.contains(0));
  CHECK(!ab.contains(2));
  CHECK(a < b);
  CHECK(b < ab);
  CHECK(a.disjoint_with(b));
  CHECK(!a.disjoint_with(ab));
  CHECK(Bundle::from_mask(3, 0b011) == ab);
  CHECK_THROWS_AS(Bundle::from_indices(3, {7}), InvalidSpecError);
}

TEST_CASE("report sets hold one interval per bundle and the empty bundle") {
  ReportSet rs(0, 2);
  CHECK(rs.size() == 1);  // implicit empty bundle
  CHECK(rs.at(Bundle::empty(2)).upper == 0.0);
  rs.add({Bundle::from_indices(2, {0}), 3.0, 5.0});
  CHECK(rs.queried_size() == 1);
  CHECK_THROWS_AS(rs.add({Bundle::from_indices(2, {0}), 1.0, 2.0}),
                  DuplicateQueryError);
  CHECK_THROWS_AS(rs.add({Bundle::from_indices(2, {1}), 4.0, 2.0}),
                  RefinementViolationError);
}

TEST_CASE("refinement only tightens") {
  ReportSet rs(0, 2);
  const Bundle a = Bundle::from_indices(2, {0});
  rs.add({a, 3.0, 9.0});
  rs.tighten(a, 4.0, 8.0);
  CHECK(rs.at(a).lower == 4.0);
  CHECK(rs.at(a).upper == 8.0);
  CHECK_THROWS_AS(rs.tighten(a, 3.0, 8.0), RefinementViolationError);
  CHECK_THROWS_AS(rs.tighten(a, 4.0, 9.0), RefinementViolationError);
  CHECK_THROWS_AS(rs.tighten(Bundle::from_indices(2, {1}), 0.0, 0.0),
                  UnsupportedBundleError);
}

TEST_CASE("total value sums per-bidder values under each view") {
  TwoItemFixture f;
  const ReportProfile reports = f.interval_reports();
  const ValuationView truth = ValuationView::truth(f.oracles());
  const ValuationView lower = ValuationView::lower(reports);

  const Allocation efficient({f.ab, f.none});
  CHECK(total_value(truth, efficient) == doctest::Approx(20.0));
  CHECK(total_value(lower, efficient) == doctest::Approx(15.0));
  const Allocation split({f.a, f.b});
  CHECK(total_value(lower, split) == doctest::Approx(14.0));

  // Unreported bundle under a reported view.
  const Allocation bad({f.b, f.none});
  CHECK_THROWS_AS(total_value(lower, bad), UnsupportedBundleError);
}

TEST_CASE("feasibility rejects doubly assigned items") {
  TwoItemFixture f;
  CHECK(is_feasible(Allocation({f.ab, f.none})));
  CHECK(!is_feasible(Allocation({f.ab, f.a})));
  CHECK(is_feasible(Allocation({f.none, f.none})));
}

TEST_CASE("efficiency and relative revenue against the optimum") {
  TwoItemFixture f;
  const ValuationView truth = ValuationView::truth(f.oracles());
  CHECK(efficiency(truth, Allocation({f.ab, f.none}), 20.0) ==
        doctest::Approx(1.0));
  CHECK(efficiency(truth, Allocation({f.a, f.b}), 20.0) ==
        doctest::Approx(0.9));
  CHECK(efficiency(truth, Allocation({f.none, f.none}), 20.0) ==
        doctest::Approx(0.0));
  CHECK_THROWS_AS(efficiency(truth, Allocation({f.none, f.none}), 0.0),
                  DegenerateInstanceError);

  CHECK(relative_revenue({12.0, 0.0}, 20.0) == doctest::Approx(0.6));
  CHECK(relative_revenue({0.0, 0.0}, 20.0) == doctest::Approx(0.0));
  CHECK(relative_revenue({10.0, 0.0}, 20.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(relative_revenue({1.0}, 0.0), DegenerateInstanceError);
}

TEST_CASE("reporting uncertainty") {
  const Bundle x = Bundle::from_indices(2, {0});
  CHECK(reporting_uncertainty({x, 15.0, 25.0}) == doctest::Approx(0.4));
  CHECK(reporting_uncertainty({x, 7.0, 7.0}) == doctest::Approx(0.0));
  CHECK(reporting_uncertainty({x, 0.0, 8.0}) == doctest::Approx(1.0));
  CHECK(reporting_uncertainty({x, 0.0, 0.0}) == 0.0);  // exact by definition
}

TEST_CASE("efficiency is scale invariant") {
  TwoItemFixture f;
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const double c = 0.1 + 10.0 * rng.next_real();
    TableValuation s1(2), s2(2);
    for (const Bundle& x : {f.a, f.b, f.ab}) {
      s1.set(x, c * f.v1.value(x));
      s2.set(x, c * f.v2.value(x));
    }
    const ValuationView base = ValuationView::truth(f.oracles());
    const ValuationView scaled = ValuationView::truth({&s1, &s2});
    for (const Allocation& alloc :
         {Allocation({f.ab, f.none}), Allocation({f.a, f.b}),
          Allocation({f.none, f.ab})}) {
      CHECK(efficiency(base, alloc, 20.0) ==
            doctest::Approx(efficiency(scaled, alloc, c * 20.0)).epsilon(1e-9));
    }
  }
}

TEST_CASE("uncertainty stays in the unit interval for valid reports") {
  Rng rng(11);
  const Bundle x = Bundle::from_indices(2, {0});
  for (int trial = 0; trial < 200; ++trial) {
    const double lo = 100.0 * rng.next_real();
    const double hi = lo + 100.0 * rng.next_real();
    const double u = reporting_uncertainty({x, lo, hi});
    CHECK(u >= 0.0);
    CHECK(u <= 1.0);
  }
}

TEST_CASE("total value matches the per-bidder sum at tight tolerance") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    TableValuation t1(2), t2(2);
    TwoItemFixture f;
    double m1 = 0.0, m2 = 0.0;
    for (const Bundle& x : {f.a, f.b, f.ab}) {
      t1.set(x, 1e6 * rng.next_real());
      t2.set(x, 1e6 * rng.next_real());
      m1 = std::max(m1, t1.value(x));
      m2 = std::max(m2, t2.value(x));
    }
    const ValuationView view = ValuationView::truth({&t1, &t2});
    const Allocation alloc({f.a, f.b});
    const double direct = t1.value(f.a) + t2.value(f.b);
    CHECK(std::fabs(total_value(view, alloc) - direct) <=
          1e-9 * std::max(1.0, m1 + m2));
  }
}
