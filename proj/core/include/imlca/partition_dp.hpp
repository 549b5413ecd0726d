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

#include <cstdint>
#include <vector>

namespace imlca {

struct PartitionResult {
  std::vector<std::uint64_t> masks;  // chosen bundle mask per table
  double value = 0.0;
};

// Exact maximizer of sum_i table_i[mask_i] over item-disjoint bundle masks
// (items may stay unassigned). Each table has 2^item_count entries; an entry
// of -infinity excludes that bundle for that table. Subset-sum dynamic
// program over (table, available-items) states, O(n * 3^m). Ties resolve to
// the lexicographically smallest mask profile.
PartitionResult max_weight_partition(
    std::size_t item_count, const std::vector<std::vector<double>>& tables);

}  // namespace imlca
