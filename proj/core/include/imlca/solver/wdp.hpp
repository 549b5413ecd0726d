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

#include <chrono>
#include <optional>
#include <vector>

#include "imlca/types.hpp"

namespace imlca {

struct WdpCandidate {
  Bundle bundle;
  double weight = 0.0;
};

// Set packing over per-bidder candidate lists: each bidder selects exactly
// one candidate, no item twice. Callers keep the empty bundle (weight 0) in
// every list so the problem is always feasible.
struct WdpProblem {
  std::size_t item_count = 0;
  std::vector<std::vector<WdpCandidate>> candidates;
};

struct WdpResult {
  std::vector<std::size_t> selection;  // candidate index per bidder
  double total_weight = 0.0;
  bool proven_optimal = true;
};

// Exact branch-and-bound over per-bidder choices with item-conflict pruning.
// Ties broken to the lexicographically smallest selection vector. When the
// optional wall-clock cap is hit, the incumbent is returned with
// proven_optimal = false.
WdpResult solve_wdp(const WdpProblem& problem,
                    std::optional<std::chrono::milliseconds> time_cap = {});

}  // namespace imlca
