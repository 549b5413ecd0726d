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

#include <optional>
#include <string>
#include <vector>

#include "imlca/types.hpp"

namespace imlca {

enum class Phase { kInitialization, kMlRefinement, kConvergence };

const char* phase_name(Phase phase);

struct RoundRecord {
  int index = 0;
  Phase phase = Phase::kInitialization;
  std::vector<std::vector<Bundle>> queries;  // per bidder
  std::optional<Allocation> provisional;
  std::vector<double> prices;  // empty when the round computed none
  std::optional<double> omega;
  int mrpar_events = 0;    // bidders that changed at least one bound
  int bound_changes = 0;   // individual bound movements
  int effort_checked = 0;  // ignorability audit: inequalities evaluated
  int effort_violations = 0;
};

// Full per-run record: every round's queries, refinements, provisional
// allocation and prices, plus the counters the experiment tables aggregate.
struct AuctionTrace {
  std::size_t item_count = 0;
  std::size_t bidder_count = 0;
  std::vector<RoundRecord> rounds;
  int ml_rounds = 0;
  int refine_rounds = 0;
  int mrpar_refinements = 0;  // equals the sum of round mrpar_events
  int total_refinements = 0;  // equals the sum of round bound_changes
  double initial_uncertainty = 0.0;
  double final_uncertainty = 0.0;
  double terminal_omega = 1.0;
  bool degenerate_outcome = false;
  std::vector<bool> frozen;
  Outcome outcome;

  void append(RoundRecord record);
  std::string to_json() const;  // deterministic text form
};

}  // namespace imlca
