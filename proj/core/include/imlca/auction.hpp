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

#include "imlca/bidder.hpp"
#include "imlca/ml.hpp"
#include "imlca/pricing.hpp"
#include "imlca/trace.hpp"
#include "imlca/types.hpp"

namespace imlca {

// Which mechanism the engine runs: interval bidding with effort-reduction
// prices, interval bidding with simple unique prices, or the exact-bidding
// baseline (zero-width reports, no refinement machinery).
enum class Variant { kImlca, kImlcaSp, kMlcaExact };

const char* variant_name(Variant variant);
std::optional<Variant> variant_from_name(const std::string& name);

enum class AlphaMode { kFixed, kAnneal };

struct MechanismConfig {
  std::size_t q_max = 14;    // lifetime reports per bidder (excluding empty)
  std::size_t q_init = 6;    // initial random queries
  std::size_t q_round = 0;   // per-round cap; 0 means bidder count
  double omega_stop = 0.99;  // refinement threshold
  std::size_t max_refine_rounds = 30;
  AlphaMode alpha_mode = AlphaMode::kFixed;
  double alpha = 0.5;
  // Per-bidder round epsilon: fraction of the largest initial pricing error,
  // floored.
  double epsilon_fraction = 0.05;
  double epsilon_floor = 1e-4;
  Variant variant = Variant::kImlca;
  // 0 selects 10 x the largest reported upper bound.
  double effort_constant = 0.0;
  KernelParams kernel;
  std::uint64_t master_seed = 0;
  std::optional<std::chrono::milliseconds> solver_time_cap =
      std::chrono::milliseconds(60000);
  // Evaluates the ignorability inequality on every priced round and counts
  // violations into the trace.
  bool audit_effort_reduction = true;

  void validate(std::size_t bidder_count) const;
  std::size_t effective_q_round(std::size_t bidder_count) const {
    return q_round == 0 ? bidder_count : q_round;
  }
};

// Mutable run state threaded through the phases.
struct AuctionState {
  std::size_t item_count = 0;
  std::vector<Bidder*> bidders;
  ReportProfile reports;
  std::vector<bool> frozen;
  AuctionTrace trace;
};

AuctionState make_state(std::size_t item_count,
                        const std::vector<Bidder*>& bidders);

// Queries q_init distinct random non-empty bundles from every bidder.
void run_initialization(AuctionState& state, const MechanismConfig& config);

// Query generation plus revealed-preference refinement until the per-bidder
// report budget window closes.
void run_ml_refinement_phase(AuctionState& state,
                             const MechanismConfig& config);

// Refinement-only rounds under both activity rules until the convergence
// bound reaches omega_stop or the round cap is hit.
void run_convergence_phase(AuctionState& state, const MechanismConfig& config);

// Lower-bound winner determination and marginal-economy payments.
struct OutcomeResult {
  Outcome outcome;
  bool degenerate = false;
};
OutcomeResult determine_outcome(const ReportProfile& reports);

struct AuctionResult {
  Outcome outcome;
  AuctionTrace trace;
};

// The full mechanism: initialization, ML plus bound refinement, convergence
// refinement, outcome determination.
AuctionResult run_auction(std::size_t item_count,
                          const std::vector<Bidder*>& bidders,
                          const MechanismConfig& config);

}  // namespace imlca
