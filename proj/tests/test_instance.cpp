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
#include "imlca/instance.hpp"
#include "imlca/rng.hpp"
#include "oracles.hpp"

using namespace imlca;

namespace {

SyntheticDomainSpec small_spec(std::uint64_t seed) {
  SyntheticDomainSpec spec;
  spec.items = 5;
  spec.bidders = 3;
  spec.interest_size = 3;
  spec.seed = seed;
  return spec;
}

}  // namespace

TEST_CASE("zero synergy means additive values over the interest arc") {
  SyntheticDomainSpec spec = small_spec(3);
  spec.synergy_min = spec.synergy_max = 0.0;
  Instance instance = generate_instance(spec);
  for (const SyntheticValuation& v : instance.valuations) {
    for (std::uint64_t mask = 1; mask < 32; ++mask) {
      const Bundle x = Bundle::from_mask(5, mask);
      double additive = 0.0;
      for (std::size_t j = 0; j < 5; ++j)
        if (x.contains(j))
          additive += v.value(Bundle::from_indices(5, {j}));
      CHECK(v.value(x) == doctest::Approx(additive).epsilon(1e-9));
    }
  }
}

TEST_CASE("bundles outside the interest arc are worthless") {
  Instance instance = generate_instance(small_spec(5));
  for (const SyntheticValuation& v : instance.valuations) {
    std::vector<std::size_t> outside;
    for (std::size_t j = 0; j < 5; ++j) {
      bool in_arc = false;
      for (std::size_t a : v.interest_arc()) in_arc = in_arc || a == j;
      if (!in_arc) outside.push_back(j);
    }
    if (outside.empty()) continue;
    CHECK(v.value(Bundle::from_indices(5, outside)) == 0.0);
  }
}

TEST_CASE("the full arc earns exactly the synergy multiplier") {
  Instance instance = generate_instance(small_spec(7));
  for (const SyntheticValuation& v : instance.valuations) {
    double base = 0.0;
    for (std::size_t j : v.interest_arc())
      base += v.value(Bundle::from_indices(5, {j}));
    const Bundle full_arc = Bundle::from_indices(
        5, std::vector<std::size_t>(v.interest_arc().begin(),
                                    v.interest_arc().end()));
    CHECK(v.value(full_arc) ==
          doctest::Approx(base * (1.0 + v.synergy())).epsilon(1e-9));
  }
}

TEST_CASE("superadditivity within the arc for nonnegative synergy") {
  Rng rng(19);
  Instance instance = generate_instance(small_spec(9));
  for (const SyntheticValuation& v : instance.valuations) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::uint64_t x = rng.next_below(32);
      const std::uint64_t y = rng.next_below(32) & ~x;
      const double together =
          v.value(Bundle::from_mask(5, x | y));
      const double apart =
          v.value(Bundle::from_mask(5, x)) + v.value(Bundle::from_mask(5, y));
      CHECK(together >= apart - 1e-9);
    }
  }
}

TEST_CASE("spec validation rejects malformed domains") {
  SyntheticDomainSpec spec = small_spec(1);
  spec.interest_size = 9;
  CHECK_THROWS_AS(generate_instance(spec), InvalidSpecError);
  spec = small_spec(1);
  spec.base_value_max = spec.base_value_min - 1.0;
  CHECK_THROWS_AS(generate_instance(spec), InvalidSpecError);
}

TEST_CASE("instances are deterministic per seed") {
  Instance a = generate_instance(small_spec(123));
  Instance b = generate_instance(small_spec(123));
  for (std::uint64_t mask = 0; mask < 32; ++mask)
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(a.valuations[i].value(Bundle::from_mask(5, mask)) ==
            b.valuations[i].value(Bundle::from_mask(5, mask)));
}

TEST_CASE("exact optimum matches exhaustive assignment enumeration") {
  for (std::uint64_t seed : {2ull, 4ull, 6ull, 8ull}) {
    Instance instance = generate_instance(small_spec(seed));
    auto [alloc, value] = brute_force_optimum(instance);
    CHECK(is_feasible(alloc));
    auto [ref_alloc, ref_value] =
        imlca::testing::enumerate_partition(5, instance.oracles());
    (void)ref_alloc;
    CHECK(value == doctest::Approx(ref_value).epsilon(1e-9));
  }
}

TEST_CASE("single-bidder optimum is that bidder's best bundle") {
  SyntheticDomainSpec spec = small_spec(31);
  spec.bidders = 1;
  Instance instance = generate_instance(spec);
  auto [alloc, value] = brute_force_optimum(instance);
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < 32; ++mask)
    best = std::max(best,
                    instance.valuations[0].value(Bundle::from_mask(5, mask)));
  CHECK(value == doctest::Approx(best));
  CHECK(instance.valuations[0].value(alloc.of(0)) == doctest::Approx(best));
}

TEST_CASE("the guard rejects oversized instances") {
  SyntheticDomainSpec spec;
  spec.items = 13;
  spec.bidders = 6;
  spec.interest_size = 4;
  Instance instance = generate_instance(spec);
  CHECK_THROWS_AS(brute_force_optimum(instance), TooLargeError);
}
