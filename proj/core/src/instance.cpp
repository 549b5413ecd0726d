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

#include "imlca/instance.hpp"

#include "imlca/errors.hpp"
#include "imlca/partition_dp.hpp"
#include "imlca/rng.hpp"

namespace imlca {

void SyntheticDomainSpec::validate() const {
  if (items == 0 || bidders == 0)
    throw InvalidSpecError("domain needs items and bidders");
  if (interest_size == 0 || interest_size > items)
    throw InvalidSpecError("interest size must lie in [1, items]");
  if (base_value_min < 0.0 || base_value_max < base_value_min)
    throw InvalidSpecError("base value range malformed");
  if (synergy_max < synergy_min)
    throw InvalidSpecError("synergy range malformed");
}

SyntheticValuation::SyntheticValuation(std::size_t item_count,
                                       std::vector<std::size_t> arc,
                                       std::vector<double> base_values,
                                       double synergy)
    : m_(item_count),
      base_by_item_(item_count, 0.0),
      arc_(std::move(arc)),
      synergy_(synergy),
      arc_size_(arc_.size()) {
  for (std::size_t t = 0; t < arc_.size(); ++t)
    base_by_item_[arc_[t]] = base_values[t];
}

double SyntheticValuation::value(const Bundle& bundle) const {
  double base = 0.0;
  std::size_t hits = 0;
  for (std::size_t j : arc_) {
    if (bundle.contains(j)) {
      base += base_by_item_[j];
      ++hits;
    }
  }
  if (hits == 0) return 0.0;
  const double scale =
      1.0 + synergy_ * static_cast<double>(hits - 1) /
                static_cast<double>(std::max<std::size_t>(1, arc_size_ - 1));
  return base * scale;
}

std::vector<const Valuation*> Instance::oracles() const {
  std::vector<const Valuation*> out;
  out.reserve(valuations.size());
  for (const SyntheticValuation& v : valuations) out.push_back(&v);
  return out;
}

Instance generate_instance(const SyntheticDomainSpec& spec) {
  spec.validate();
  Instance instance;
  instance.spec = spec;
  Rng root(spec.seed);
  for (std::size_t i = 0; i < spec.bidders; ++i) {
    Rng stream = root.fork(0xB1D + i);
    const std::size_t start = stream.next_below(spec.items);
    std::vector<std::size_t> arc(spec.interest_size);
    for (std::size_t t = 0; t < spec.interest_size; ++t)
      arc[t] = (start + t) % spec.items;
    std::vector<double> base(spec.interest_size);
    for (double& b : base)
      b = spec.base_value_min +
          stream.next_real() * (spec.base_value_max - spec.base_value_min);
    const double synergy =
        spec.synergy_min +
        stream.next_real() * (spec.synergy_max - spec.synergy_min);
    instance.valuations.emplace_back(spec.items, std::move(arc),
                                     std::move(base), synergy);
  }
  return instance;
}

std::pair<Allocation, double> brute_force_optimum(const Instance& instance) {
  const std::size_t m = instance.spec.items;
  const std::size_t n = instance.spec.bidders;
  if (m > 12 || n > 8)
    throw TooLargeError("exact optimum guarded to 12 items x 8 bidders");

  const std::size_t size = std::size_t{1} << m;
  std::vector<std::vector<double>> tables(n, std::vector<double>(size, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t mask = 1; mask < size; ++mask)
      tables[i][mask] =
          instance.valuations[i].value(Bundle::from_mask(m, mask));

  PartitionResult best = max_weight_partition(m, tables);
  std::vector<Bundle> bundles;
  bundles.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    bundles.push_back(Bundle::from_mask(m, best.masks[i]));
  return {Allocation(std::move(bundles)), best.value};
}

}  // namespace imlca
