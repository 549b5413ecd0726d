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

#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "imlca/allocation.hpp"
#include "imlca/pricing.hpp"
#include "imlca/rng.hpp"

using namespace imlca;
using imlca::testing::TwoItemFixture;

namespace {

// Single bidder with one exact report plus the implicit empty bundle.
ReportProfile single_exact(std::size_t m, const Bundle& x, double value) {
  ReportProfile reports;
  reports.emplace_back(0, m);
  reports[0].add({x, value, value});
  return reports;
}

}  // namespace

TEST_CASE("approximate clearing on the interval fixture") {
  TwoItemFixture f;
  const ReportProfile reports = f.interval_reports();
  const Allocation prov({f.ab, f.none});
  const ValuationView mix = ValuationView::alpha(reports, 0.5);

  PriceSolution sol = approx_clearing_prices(mix, prov, reports);
  CHECK(sol.max_delta == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(sol.positive_count == 0);
  // Clearing region: pi_B in [7.5, 10], 12 <= pi_A + pi_B <= 20.
  const double pa = sol.prices.of_item(0), pb = sol.prices.of_item(1);
  CHECK(pb >= 7.5 - 1e-7);
  CHECK(pb <= 10.0 + 1e-7);
  CHECK(pa + pb >= 12.0 - 1e-7);
  CHECK(pa + pb <= 20.0 + 1e-7);
  // Deltas are the clearing violations at the returned prices.
  for (std::size_t i = 0; i < sol.delta.size(); ++i)
    for (double d : sol.delta[i]) CHECK(d <= 1e-7);
}

TEST_CASE("single bidder with one exact report clears at zero delta") {
  const Bundle x = Bundle::from_indices(3, {0, 2});
  const ReportProfile reports = single_exact(3, x, 7.0);
  const Allocation prov({x});
  const ValuationView mix = ValuationView::alpha(reports, 0.5);
  PriceSolution sol = approx_clearing_prices(mix, prov, reports);
  CHECK(sol.max_delta == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(sol.prices.of_bundle(x) <= 7.0 + 1e-7);
  CHECK(sol.prices.of_item(1) == 0.0);  // unallocated item priced exactly 0
}

TEST_CASE("two identical single-minded bidders pin the bundle price") {
  const std::size_t m = 2;
  const Bundle full = Bundle::from_indices(m, {0, 1});
  ReportProfile reports;
  reports.emplace_back(0, m);
  reports[0].add({full, 9.0, 9.0});
  reports.emplace_back(1, m);
  reports[1].add({full, 9.0, 9.0});
  const Allocation prov({full, Bundle::empty(m)});
  const ValuationView mix = ValuationView::alpha(reports, 0.5);
  PriceSolution sol = approx_clearing_prices(mix, prov, reports);
  CHECK(sol.max_delta == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(sol.prices.of_bundle(full) == doctest::Approx(9.0).epsilon(1e-6));
}

TEST_CASE("unique prices on the fixture settle at the balanced vertex") {
  TwoItemFixture f;
  const ReportProfile reports = f.interval_reports();
  const Allocation prov({f.ab, f.none});
  PriceSolution sol = unique_prices(reports, 0.5, prov);
  // Sum-maximal clearing face: pi_A + pi_B = 20, pi_B in [7.5, 10]; the
  // norm-minimal point of that face is (10, 10).
  CHECK(sol.prices.of_item(0) == doctest::Approx(10.0).epsilon(1e-5));
  CHECK(sol.prices.of_item(1) == doctest::Approx(10.0).epsilon(1e-5));
}

TEST_CASE("unique prices drive a lone exact report to its value") {
  const Bundle x = Bundle::from_indices(2, {0});
  const ReportProfile reports = single_exact(2, x, 7.0);
  const Allocation prov({x});
  PriceSolution sol = unique_prices(reports, 0.5, prov);
  CHECK(sol.prices.of_bundle(x) == doctest::Approx(7.0).epsilon(1e-6));
}

TEST_CASE("zero max delta keeps the norm stage trivial") {
  TwoItemFixture f;
  const ReportProfile reports = f.interval_reports();
  const Allocation prov({f.ab, f.none});
  PriceSolution sol = unique_prices(reports, 0.5, prov);
  CHECK(sol.max_delta == doctest::Approx(0.0).epsilon(1e-7));
  for (const auto& per : sol.delta)
    for (double d : per) CHECK(d <= 1e-7);
}

TEST_CASE("effort-reduction prices satisfy the ignorability inequality") {
  TwoItemFixture f;
  const ReportProfile reports = f.interval_reports();
  const Allocation prov({f.ab, f.none});
  PriceSolution sol = effort_reduction_prices(reports, 0.5, prov, 250.0);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const Bundle& own = prov.of(i);
    const double own_utility =
        reports[i].at(own).lower - sol.prices.of_bundle(own);
    for (std::size_t k = 0; k < reports[i].size(); ++k) {
      const IntervalReport& r = reports[i].at(k);
      if (r.bundle == own || sol.delta[i][k] > 0.0) continue;
      CHECK(own_utility >=
            r.upper - sol.prices.of_bundle(r.bundle) - 1e-6);
    }
  }
}

TEST_CASE("exact reports: effort-reduction equals unique prices") {
  TwoItemFixture f;
  const ReportProfile exact = f.exact_reports();
  const Allocation prov({f.ab, f.none});
  PriceSolution simple = unique_prices(exact, 0.5, prov);
  PriceSolution effort = effort_reduction_prices(exact, 0.5, prov, 250.0);
  for (std::size_t j = 0; j < 2; ++j)
    CHECK(effort.prices.of_item(j) ==
          doctest::Approx(simple.prices.of_item(j)).epsilon(1e-5));
  // Perturbed deltas collapse to the exact-view deltas.
  for (std::size_t i = 0; i < exact.size(); ++i)
    for (std::size_t k = 0; k < exact[i].size(); ++k)
      CHECK(effort.delta[i][k] ==
            doctest::Approx(simple.delta[i][k]).epsilon(1e-5));
}

TEST_CASE("clearing under the perturbed view leaves no positive deltas") {
  TwoItemFixture f;
  // Exact reports admit clearing prices, and the perturbed view of exact
  // reports is the exact view itself.
  const ReportProfile exact = f.exact_reports();
  const Allocation prov({f.ab, f.none});
  PriceSolution sol = effort_reduction_prices(exact, 0.5, prov, 250.0);
  CHECK(sol.positive_count == 0);
}

TEST_CASE("clearing predicate on true values") {
  TwoItemFixture f;
  const ReportProfile reports = f.full_exact_reports();
  const ValuationView truth = ValuationView::truth(f.oracles());
  const LinearPrices good({10.0, 10.0});
  CHECK(is_clearing(good, Allocation({f.ab, f.none}), truth, reports));

  const LinearPrices zero({0.0, 0.0});
  CHECK(!is_clearing(zero, Allocation({f.none, f.ab}), truth, reports));
}

TEST_CASE("clearing predicate: single bidder priced at value") {
  const Bundle x = Bundle::from_indices(2, {0});
  const ReportProfile reports = single_exact(2, x, 7.0);
  const LinearPrices prices({7.0, 0.0});
  CHECK(is_clearing(prices, Allocation({x}),
                    ValuationView::lower(reports), reports));
}

TEST_CASE("self-report forces a nonnegative stage-one delta") {
  Rng rng(515);
  for (int trial = 0; trial < 25; ++trial) {
    ReportProfile reports;
    const std::size_t m = 3;
    for (int i = 0; i < 2; ++i) {
      reports.emplace_back(i, m);
      for (int k = 0; k < 3; ++k) {
        const Bundle x = Bundle::from_mask(m, 1 + rng.next_below(7));
        if (reports[i].contains(x)) continue;
        const double lo = 40.0 * rng.next_real();
        reports[i].add({x, lo, lo + 40.0 * rng.next_real()});
      }
    }
    auto [view, prov] = provisional_allocation(reports, 0.5);
    PriceSolution sol = approx_clearing_prices(view, prov, reports);
    CHECK(sol.max_delta >= -1e-9);

    // If the returned prices clear the mix view, the procedure said so.
    if (is_clearing(sol.prices, prov, view, reports))
      CHECK(sol.max_delta <= 1e-6);

    // Unallocated items are priced exactly zero.
    for (std::size_t j = 0; j < m; ++j) {
      bool allocated = false;
      for (std::size_t i = 0; i < reports.size(); ++i)
        allocated = allocated || prov.of(i).contains(j);
      if (!allocated) CHECK(sol.prices.of_item(j) == 0.0);
    }
  }
}

TEST_CASE("clearing instances produce zero deltas through every procedure") {
  // Additive exact values: item prices at the per-item maximum clear.
  Rng rng(616);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t m = 4;
    ReportProfile reports;
    std::vector<std::vector<double>> item_values(3,
                                                 std::vector<double>(m, 0.0));
    for (int i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < m; ++j)
        item_values[i][j] = 1.0 + 20.0 * rng.next_real();
    for (int i = 0; i < 3; ++i) {
      reports.emplace_back(i, m);
      for (std::uint64_t mask = 1; mask < (1u << m); ++mask) {
        double v = 0.0;
        for (std::size_t j = 0; j < m; ++j)
          if (mask & (1u << j)) v += item_values[i][j];
        reports[i].add({Bundle::from_mask(m, mask), v, v});
      }
    }
    auto [view, prov] = provisional_allocation(reports, 0.5);
    PriceSolution sol = approx_clearing_prices(view, prov, reports);
    CHECK(sol.max_delta <= 1e-6);
    CHECK(sol.positive_count == 0);
    CHECK(is_clearing(sol.prices, prov, view, reports));
  }
}
