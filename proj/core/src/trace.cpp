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

#include "imlca/trace.hpp"

#include <nlohmann/json.hpp>

namespace imlca {
namespace {

using Json = nlohmann::ordered_json;

Json bundle_json(const Bundle& b) {
  Json items = Json::array();
  for (std::size_t j = 0; j < b.item_count(); ++j)
    if (b.contains(j)) items.push_back(j);
  return items;
}

}  // namespace

const char* phase_name(Phase phase) {
  switch (phase) {
    case Phase::kInitialization:
      return "initialization";
    case Phase::kMlRefinement:
      return "ml_refinement";
    case Phase::kConvergence:
      return "convergence";
  }
  return "unknown";
}

void AuctionTrace::append(RoundRecord record) {
  record.index = static_cast<int>(rounds.size());
  mrpar_refinements += record.mrpar_events;
  total_refinements += record.bound_changes;
  if (record.phase == Phase::kMlRefinement) ++ml_rounds;
  if (record.phase == Phase::kConvergence) ++refine_rounds;
  rounds.push_back(std::move(record));
}

std::string AuctionTrace::to_json() const {
  Json root;
  root["item_count"] = item_count;
  root["bidder_count"] = bidder_count;
  root["ml_rounds"] = ml_rounds;
  root["refine_rounds"] = refine_rounds;
  root["mrpar_refinements"] = mrpar_refinements;
  root["total_refinements"] = total_refinements;
  root["initial_uncertainty"] = initial_uncertainty;
  root["final_uncertainty"] = final_uncertainty;
  root["terminal_omega"] = terminal_omega;
  root["degenerate_outcome"] = degenerate_outcome;
  root["frozen"] = frozen;

  Json rs = Json::array();
  for (const RoundRecord& r : rounds) {
    Json jr;
    jr["index"] = r.index;
    jr["phase"] = phase_name(r.phase);
    Json queries = Json::array();
    for (const auto& per : r.queries) {
      Json q = Json::array();
      for (const Bundle& b : per) q.push_back(bundle_json(b));
      queries.push_back(q);
    }
    jr["queries"] = queries;
    if (r.provisional) {
      Json alloc = Json::array();
      for (const Bundle& b : r.provisional->bundles())
        alloc.push_back(bundle_json(b));
      jr["provisional"] = alloc;
    }
    jr["prices"] = r.prices;
    if (r.omega) jr["omega"] = *r.omega;
    jr["mrpar_events"] = r.mrpar_events;
    jr["bound_changes"] = r.bound_changes;
    jr["effort_checked"] = r.effort_checked;
    jr["effort_violations"] = r.effort_violations;
    rs.push_back(jr);
  }
  root["rounds"] = rs;

  Json alloc = Json::array();
  for (const Bundle& b : outcome.allocation.bundles())
    alloc.push_back(bundle_json(b));
  root["allocation"] = alloc;
  root["payments"] = outcome.payments;
  return root.dump(2);
}

}  // namespace imlca
