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

#include "doctest.h"
#include "fixtures.hpp"
#include "imlca/allocation.hpp"
#include "imlca/numeric.hpp"
#include "imlca/rng.hpp"

using namespace imlca;
using imlca::testing::TwoItemFixture;

TEST_CASE("reported winner determination in main and marginal economies") {
  TwoItemFixture f;
  const ReportProfile reports = f.interval_reports();
  const ValuationView lower = ValuationView::lower(reports);

  auto [main_alloc, main_value] =
      wdp_reports(lower, reports, Economy::main());
  CHECK(main_value == doctest::Approx(15.0));
  CHECK(main_alloc.of(0) == f.ab);
  CHECK(main_alloc.of(1) == f.none);

  auto [m1_alloc, m1_value] =
      wdp_reports(lower, reports, Economy::marginal(0));
  CHECK(m1_value == doctest::Approx(10.0));
  CHECK(m1_alloc.of(0) == f.none);
  CHECK(m1_alloc.of(1) == f.ab);

  auto [m2_alloc, m2_value] =
      wdp_reports(lower, reports, Economy::marginal(1));
  CHECK(m2_value == doctest::Approx(15.0));
  CHECK(m2_alloc.of(0) == f.ab);
}

TEST_CASE("provisional allocation under the alpha mix") {
  TwoItemFixture f;
  const ReportProfile reports = f.interval_reports();

  auto [v1, a1] = provisional_allocation(reports, 1.0);  // lower bounds
  CHECK(v1.value(0, f.ab) == doctest::Approx(15.0));
  CHECK(a1.of(0) == f.ab);

  auto [v05, a05] = provisional_allocation(reports, 0.5);
  CHECK(v05.value(0, f.ab) == doctest::Approx(20.0));
  CHECK(v05.value(0, f.a) == doctest::Approx(10.0));
  CHECK(v05.value(1, f.ab) == doctest::Approx(12.0));
  CHECK(v05.value(1, f.b) == doctest::Approx(7.5));
  CHECK(a05.of(0) == f.ab);  // 20 beats 10 + 7.5
  CHECK(a05.of(1) == f.none);

  auto [v0, a0] = provisional_allocation(reports, 0.0);  // upper bounds
  CHECK(v0.value(0, f.ab) == doctest::Approx(25.0));
  CHECK(a0.of(0) == f.ab);  // 25 beats 12 + 9
}

TEST_CASE("perturbed view: lower on the reference bundle, upper elsewhere") {
  TwoItemFixture f;
  const ReportProfile reports = f.interval_reports();

  const ValuationView pv = perturbed_view(reports, Allocation({f.ab, f.none}));
  CHECK(pv.value(0, f.ab) == doctest::Approx(15.0));
  CHECK(pv.value(0, f.a) == doctest::Approx(12.0));

  const ValuationView pv2 = perturbed_view(reports, Allocation({f.a, f.b}));
  CHECK(pv2.value(0, f.a) == doctest::Approx(8.0));
  CHECK(pv2.value(0, f.ab) == doctest::Approx(25.0));

  const ReportProfile exact = f.exact_reports();
  const ValuationView pv3 = perturbed_view(exact, Allocation({f.ab, f.none}));
  CHECK(pv3.value(0, f.ab) == doctest::Approx(20.0));
  CHECK(pv3.value(0, f.a) == doctest::Approx(10.0));

  CHECK_THROWS_AS(perturbed_view(reports, Allocation({f.b, f.none})),
                  UnsupportedBundleError);
}

TEST_CASE("view dominance and economy bounds on random profiles") {
  Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    ReportProfile reports;
    const std::size_t m = 3;
    for (int i = 0; i < 3; ++i) {
      reports.emplace_back(i, m);
      for (int k = 0; k < 3; ++k) {
        const std::uint64_t mask = 1 + rng.next_below(7);
        const Bundle x = Bundle::from_mask(m, mask);
        if (reports[i].contains(x)) continue;
        const double lo = 50.0 * rng.next_real();
        reports[i].add({x, lo, lo + 50.0 * rng.next_real()});
      }
    }
    const double lo_val =
        wdp_reports(ValuationView::lower(reports), reports, Economy::main())
            .second;
    const double up_val =
        wdp_reports(ValuationView::upper(reports), reports, Economy::main())
            .second;
    CHECK(lo_val <= up_val + 1e-9);

    // Alpha monotonicity: higher alpha weights the lower bound more.
    double prev = kInf;
    for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const double v = wdp_reports(ValuationView::alpha(reports, alpha),
                                   reports, Economy::main())
                           .second;
      CHECK(v <= prev + 1e-9);
      prev = v;
    }

    // Dropping a bidder cannot raise the optimum, and the main optimum
    // minus the dropped bidder's own term stays feasible.
    auto [main_alloc, main_value] =
        wdp_reports(ValuationView::lower(reports), reports, Economy::main());
    for (int i = 0; i < 3; ++i) {
      const double marginal =
          wdp_reports(ValuationView::lower(reports), reports,
                      Economy::marginal(i))
              .second;
      CHECK(marginal <= main_value + 1e-9);
      const double own =
          ValuationView::lower(reports).value(i, main_alloc.of(i));
      CHECK(marginal >= main_value - own - 1e-9);
    }
  }
}

TEST_CASE("zero-width intervals collapse all views") {
  TwoItemFixture f;
  const ReportProfile exact = f.exact_reports();
  auto [alloc, lo] =
      wdp_reports(ValuationView::lower(exact), exact, Economy::main());
  const double up =
      wdp_reports(ValuationView::upper(exact), exact, Economy::main()).second;
  const double pert =
      wdp_reports(perturbed_view(exact, alloc), exact, Economy::main()).second;
  CHECK(lo == doctest::Approx(up));
  CHECK(lo == doctest::Approx(pert));
}
