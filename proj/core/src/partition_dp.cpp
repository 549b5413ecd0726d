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

#include "imlca/partition_dp.hpp"

#include <cmath>

#include "imlca/errors.hpp"
#include "imlca/numeric.hpp"

namespace imlca {

PartitionResult max_weight_partition(
    std::size_t item_count, const std::vector<std::vector<double>>& tables) {
  if (item_count > 16)
    throw TooLargeError("exact partition limited to 16 items");
  const std::size_t n = tables.size();
  const std::size_t size = std::size_t{1} << item_count;
  for (const auto& t : tables)
    if (t.size() != size) throw InvalidSpecError("value table has wrong size");

  // opt[mask]: best value for the remaining tables using items inside mask.
  std::vector<double> opt(size, 0.0), next(size, 0.0);
  std::vector<std::vector<std::uint32_t>> choice(
      n, std::vector<std::uint32_t>(size, 0));

  for (std::size_t i = n; i-- > 0;) {
    const std::vector<double>& table = tables[i];
    for (std::size_t mask = 0; mask < size; ++mask) {
      double best = -kInf;
      std::uint32_t best_sub = 0;
      std::size_t sub = mask;
      for (;;) {
        const double v = table[sub] + next[mask & ~sub];
        if (v > best + kTieTol) {
          best = v;
          best_sub = static_cast<std::uint32_t>(sub);
        } else if (v > best - kTieTol &&
                   static_cast<std::uint32_t>(sub) < best_sub) {
          best_sub = static_cast<std::uint32_t>(sub);
          if (v > best) best = v;
        }
        if (sub == 0) break;
        sub = (sub - 1) & mask;
      }
      opt[mask] = best;
      choice[i][mask] = best_sub;
    }
    std::swap(opt, next);
  }

  PartitionResult result;
  result.masks.assign(n, 0);
  result.value = next[size - 1];
  std::size_t mask = size - 1;
  for (std::size_t i = 0; i < n; ++i) {
    result.masks[i] = choice[i][mask];
    mask &= ~static_cast<std::size_t>(result.masks[i]);
  }
  if (std::isinf(result.value))
    throw SolverError("partition has no feasible assignment");
  return result;
}

}  // namespace imlca
