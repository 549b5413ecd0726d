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

#include "imlca/auction.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "imlca/allocation.hpp"
#include "imlca/errors.hpp"
#include "imlca/numeric.hpp"
#include "imlca/valuation.hpp"

namespace imlca {
namespace {

constexpr std::uint64_t kInitStreamTag = 0x494e4954;  // per-bidder init draws

double mean_uncertainty(const ReportProfile& reports) {
  double total = 0.0;
  std::size_t count = 0;
  for (const ReportSet& rs : reports) {
    for (const IntervalReport& r : rs.reports()) {
      if (r.bundle.is_empty()) continue;
      total += reporting_uncertainty(r);
      ++count;
    }
  }
  return count == 0 ? 0.0 : total / count;
}

double default_effort_constant(const ReportProfile& reports) {
  double max_upper = 0.0;
  for (const ReportSet& rs : reports)
    for (const IntervalReport& r : rs.reports())
      max_upper = std::max(max_upper, r.upper);
  return 10.0 * std::max(1.0, max_upper);
}

double alpha_for_round(const MechanismConfig& config, std::size_t round,
                       std::size_t planned_rounds) {
  if (config.alpha_mode == AlphaMode::kFixed) return config.alpha;
  if (planned_rounds <= 1) return 1.0;
  return static_cast<double>(round) /
         static_cast<double>(planned_rounds - 1);
}

struct RoundPricing {
  Allocation provisional;
  PriceSolution prices;
};

RoundPricing compute_round_pricing(const AuctionState& state,
                                   const MechanismConfig& config,
                                   double alpha) {
  auto [view, provisional] = provisional_allocation(state.reports, alpha);
  (void)view;
  PricingOptions options;
  options.count_time_cap = config.solver_time_cap;
  PriceSolution prices;
  if (config.variant == Variant::kImlcaSp) {
    prices = unique_prices(state.reports, alpha, provisional, options);
  } else {
    const double c = config.effort_constant > 0.0
                         ? config.effort_constant
                         : default_effort_constant(state.reports);
    prices = effort_reduction_prices(state.reports, alpha, provisional, c,
                                     options);
  }
  return {std::move(provisional), std::move(prices)};
}

// Ignorability audit: every report with a non-positive perturbed delta and a
// bundle different from the provisional one must already be dominated.
void audit_effort(const AuctionState& state, const RoundPricing& rp,
                  RoundRecord& record) {
  for (std::size_t i = 0; i < state.reports.size(); ++i) {
    const Bundle& own = rp.provisional.of(i);
    const IntervalReport& own_report = state.reports[i].at(own);
    const double own_utility =
        own_report.lower - rp.prices.prices.of_bundle(own);
    for (std::size_t k = 0; k < state.reports[i].size(); ++k) {
      const IntervalReport& r = state.reports[i].at(k);
      if (r.bundle == own) continue;
      if (rp.prices.delta[i][k] > 0.0) continue;
      ++record.effort_checked;
      const double other_utility =
          r.upper - rp.prices.prices.of_bundle(r.bundle);
      if (!value_ge(own_utility, other_utility)) ++record.effort_violations;
    }
  }
}

struct BoundsSnapshot {
  std::vector<std::pair<double, double>> intervals;
};

BoundsSnapshot snapshot(const ReportSet& reports) {
  BoundsSnapshot s;
  s.intervals.reserve(reports.size());
  for (const IntervalReport& r : reports.reports())
    s.intervals.emplace_back(r.lower, r.upper);
  return s;
}

int count_changes(const BoundsSnapshot& before, const ReportSet& after) {
  int changes = 0;
  for (std::size_t k = 0; k < before.intervals.size(); ++k) {
    const IntervalReport& r = after.at(k);
    if (std::fabs(r.lower - before.intervals[k].first) > 1e-12) ++changes;
    if (std::fabs(r.upper - before.intervals[k].second) > 1e-12) ++changes;
  }
  return changes;
}

void freeze_bidder(AuctionState& state, std::size_t i) {
  state.frozen[i] = true;
  state.bidders[i]->set_frozen(true);
}

// Omega with the all-zero degenerate profile treated as converged.
double safe_omega(const ReportProfile& reports, bool* degenerate) {
  try {
    return convergence_bound(reports);
  } catch (const DegenerateInstanceError&) {
    if (degenerate) *degenerate = true;
    return 1.0;
  }
}

}  // namespace

const char* variant_name(Variant variant) {
  switch (variant) {
    case Variant::kImlca:
      return "imlca";
    case Variant::kImlcaSp:
      return "imlca-sp";
    case Variant::kMlcaExact:
      return "mlca-exact";
  }
  return "unknown";
}

std::optional<Variant> variant_from_name(const std::string& name) {
  if (name == "imlca") return Variant::kImlca;
  if (name == "imlca-sp") return Variant::kImlcaSp;
  if (name == "mlca-exact") return Variant::kMlcaExact;
  return std::nullopt;
}

void MechanismConfig::validate(std::size_t bidder_count) const {
  if (bidder_count == 0) throw InvalidSpecError("no bidders");
  if (q_init < 1) throw InvalidSpecError("q_init must be at least 1");
  if (q_init > q_max) throw InvalidSpecError("q_init must not exceed q_max");
  if (omega_stop <= 0.0 || omega_stop > 1.0)
    throw InvalidSpecError("omega_stop must lie in (0, 1]");
  if (alpha < 0.0 || alpha > 1.0)
    throw InvalidSpecError("alpha must lie in [0, 1]");
  if (epsilon_floor <= 0.0)
    throw InvalidSpecError("epsilon floor must be positive");
}

AuctionState make_state(std::size_t item_count,
                        const std::vector<Bidder*>& bidders) {
  AuctionState state;
  state.item_count = item_count;
  state.bidders = bidders;
  state.frozen.assign(bidders.size(), false);
  for (std::size_t i = 0; i < bidders.size(); ++i)
    state.reports.emplace_back(static_cast<int>(i), item_count);
  state.trace.item_count = item_count;
  state.trace.bidder_count = bidders.size();
  state.trace.frozen.assign(bidders.size(), false);
  return state;
}

void run_initialization(AuctionState& state, const MechanismConfig& config) {
  config.validate(state.bidders.size());
  const std::size_t m = state.item_count;
  if (m >= 63) throw TooLargeError("initialization limited to 62 items");
  const std::uint64_t space = (std::uint64_t{1} << m) - 1;  // non-empty
  if (space < config.q_init)
    throw BundleSpaceError("bundle space smaller than q_init");

  Rng root(config.master_seed);
  RoundRecord record;
  record.phase = Phase::kInitialization;
  record.queries.resize(state.bidders.size());
  for (std::size_t i = 0; i < state.bidders.size(); ++i) {
    Rng stream = root.fork(kInitStreamTag + i);
    std::unordered_set<std::uint64_t> seen;
    while (seen.size() < config.q_init) {
      const std::uint64_t mask = 1 + stream.next_below(space);
      if (!seen.insert(mask).second) continue;
      const Bundle bundle = Bundle::from_mask(m, mask);
      state.reports[i].add(state.bidders[i]->answer_query(bundle));
      record.queries[i].push_back(bundle);
    }
  }
  state.trace.append(std::move(record));
  state.trace.initial_uncertainty = mean_uncertainty(state.reports);
  state.trace.final_uncertainty = state.trace.initial_uncertainty;
}

void run_ml_refinement_phase(AuctionState& state,
                             const MechanismConfig& config) {
  const std::size_t n = state.bidders.size();
  const std::size_t q_round = config.effective_q_round(n);
  const std::size_t planned =
      (config.q_max - config.q_init + q_round - 1) / q_round;
  const std::size_t planned_total = planned + config.max_refine_rounds;

  for (std::size_t round = 0; round < planned; ++round) {
    bool anyone = false;
    for (std::size_t i = 0; i < n; ++i)
      anyone = anyone ||
               (!state.frozen[i] &&
                state.reports[i].queried_size() < config.q_max);
    if (!anyone) break;

    RoundRecord record;
    record.phase = Phase::kMlRefinement;
    record.queries.resize(n);
    const double alpha = alpha_for_round(config, round, planned_total);

    std::optional<RoundPricing> pricing;
    if (config.variant != Variant::kMlcaExact) {
      pricing = compute_round_pricing(state, config, alpha);
      record.provisional = pricing->provisional;
      record.prices = pricing->prices.prices.per_item();
      if (config.audit_effort_reduction &&
          config.variant == Variant::kImlca)
        audit_effort(state, *pricing, record);
    }

    QueryPlanParams plan_params;
    plan_params.kernel = config.kernel;
    plan_params.q_round = q_round;
    plan_params.q_max = config.q_max;
    plan_params.round_index = round;
    plan_params.frozen = state.frozen;
    QueryPlan plan = generate_round_queries(state.reports, plan_params);

    for (std::size_t i = 0; i < n; ++i) {
      for (const Bundle& b : plan.per_bidder[i]) {
        state.reports[i].add(state.bidders[i]->answer_query(b));
        record.queries[i].push_back(b);
      }
    }

    if (pricing) {
      // Bounds tighten over the enlarged report set, new bundles included.
      for (std::size_t i = 0; i < n; ++i) {
        if (state.frozen[i]) continue;
        const BoundsSnapshot before = snapshot(state.reports[i]);
        state.bidders[i]->refine_mrpar(state.reports[i],
                                       pricing->prices.prices,
                                       pricing->provisional.of(i));
        const int changes = count_changes(before, state.reports[i]);
        record.bound_changes += changes;
        if (changes > 0) ++record.mrpar_events;
        if (!mrpar_satisfied(state.reports[i], pricing->prices.prices,
                             pricing->provisional.of(i))
                 .satisfied)
          freeze_bidder(state, i);
      }
    }
    state.trace.append(std::move(record));
  }
  state.trace.final_uncertainty = mean_uncertainty(state.reports);
}

void run_convergence_phase(AuctionState& state,
                           const MechanismConfig& config) {
  if (config.variant == Variant::kMlcaExact) return;
  const std::size_t n = state.bidders.size();
  const std::size_t q_round = config.effective_q_round(n);
  const std::size_t planned_ml =
      (config.q_max - config.q_init + q_round - 1) / q_round;
  const std::size_t planned_total = planned_ml + config.max_refine_rounds;

  double omega = safe_omega(state.reports, &state.trace.degenerate_outcome);
  state.trace.terminal_omega = omega;

  for (std::size_t round = 0; round < config.max_refine_rounds; ++round) {
    if (omega >= config.omega_stop) break;
    bool any_active = false;
    for (std::size_t i = 0; i < n; ++i)
      any_active = any_active || !state.frozen[i];
    if (!any_active) break;

    RoundRecord record;
    record.phase = Phase::kConvergence;
    record.queries.resize(n);
    record.omega = omega;
    const double alpha =
        alpha_for_round(config, planned_ml + round, planned_total);
    RoundPricing pricing = compute_round_pricing(state, config, alpha);
    record.provisional = pricing.provisional;
    record.prices = pricing.prices.prices.per_item();
    if (config.audit_effort_reduction && config.variant == Variant::kImlca)
      audit_effort(state, pricing, record);

    for (std::size_t i = 0; i < n; ++i) {
      if (state.frozen[i]) continue;
      const Bundle& provisional = pricing.provisional.of(i);
      const std::vector<DiarError> ranked =
          diar_errors(state.reports[i], pricing.prices.prices, provisional);
      const double epsilon =
          std::max(config.epsilon_floor,
                   config.epsilon_fraction *
                       std::max(0.0, ranked.empty() ? 0.0 : ranked[0].error));
      const ReportSet before = state.reports[i];
      const BoundsSnapshot before_bounds = snapshot(state.reports[i]);

      state.bidders[i]->refine_mrpar(state.reports[i], pricing.prices.prices,
                                     provisional);
      const int mrpar_changes = count_changes(before_bounds, state.reports[i]);
      record.bound_changes += mrpar_changes;
      if (mrpar_changes > 0) ++record.mrpar_events;
      if (!mrpar_satisfied(state.reports[i], pricing.prices.prices,
                           provisional)
               .satisfied) {
        freeze_bidder(state, i);
        continue;
      }
      const BoundsSnapshot mid_bounds = snapshot(state.reports[i]);
      state.bidders[i]->refine_diar(state.reports[i], pricing.prices.prices,
                                    provisional, epsilon, ranked);
      record.bound_changes += count_changes(mid_bounds, state.reports[i]);
      if (!diar_satisfied(before, state.reports[i], pricing.prices.prices,
                          provisional, epsilon))
        freeze_bidder(state, i);
    }

    omega = safe_omega(state.reports, &state.trace.degenerate_outcome);
    state.trace.terminal_omega = omega;
    state.trace.append(std::move(record));
  }
  state.trace.final_uncertainty = mean_uncertainty(state.reports);
}

OutcomeResult determine_outcome(const ReportProfile& reports) {
  const ValuationView lower = ValuationView::lower(reports);
  auto [allocation, main_value] =
      wdp_reports(lower, reports, Economy::main());

  OutcomeResult result;
  result.outcome.allocation = allocation;
  result.outcome.payments.assign(reports.size(), 0.0);
  if (main_value <= kValueTol) {
    result.degenerate = true;
    return result;
  }
  for (std::size_t i = 0; i < reports.size(); ++i) {
    auto [marginal_alloc, marginal_value] = wdp_reports(
        lower, reports, Economy::marginal(static_cast<int>(i)));
    (void)marginal_alloc;
    const double others_at_final =
        main_value - lower.value(i, allocation.of(i));
    result.outcome.payments[i] = marginal_value - others_at_final;
  }
  return result;
}

AuctionResult run_auction(std::size_t item_count,
                          const std::vector<Bidder*>& bidders,
                          const MechanismConfig& config) {
  AuctionState state = make_state(item_count, bidders);
  run_initialization(state, config);
  run_ml_refinement_phase(state, config);
  run_convergence_phase(state, config);
  OutcomeResult outcome = determine_outcome(state.reports);
  state.trace.degenerate_outcome =
      state.trace.degenerate_outcome || outcome.degenerate;
  state.trace.frozen = state.frozen;
  state.trace.outcome = outcome.outcome;
  state.trace.final_uncertainty = mean_uncertainty(state.reports);
  return {outcome.outcome, std::move(state.trace)};
}

}  // namespace imlca
