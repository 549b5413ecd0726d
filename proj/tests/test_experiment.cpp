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
#include "imlca/experiment.hpp"

using namespace imlca;

namespace {

BatchConfig desk_batch() {
  BatchConfig cfg;
  cfg.domain.items = 5;
  cfg.domain.bidders = 3;
  cfg.domain.interest_size = 3;
  cfg.mechanism.q_init = 3;
  cfg.mechanism.q_max = 5;
  cfg.mechanism.q_round = 2;
  cfg.mechanism.max_refine_rounds = 8;
  cfg.mu = 0.5;
  cfg.seeds = {101, 102, 103, 104};
  cfg.parallelism = 2;
  return cfg;
}

}  // namespace

TEST_CASE("batch rows follow the seed x variant counting contract") {
  BatchConfig cfg = desk_batch();
  cfg.variants = {Variant::kImlca, Variant::kMlcaExact, Variant::kImlcaSp};
  ExperimentResult result = run_batch(cfg);
  CHECK(result.rows.size() == 12);
  CHECK(!result.any_failed);
  CHECK(result.aggregates.size() == 3);
  for (const VariantAggregate& agg : result.aggregates) CHECK(agg.runs == 4);
}

TEST_CASE("exact baseline rows report zero uncertainty") {
  BatchConfig cfg = desk_batch();
  cfg.variants = {Variant::kMlcaExact};
  ExperimentResult result = run_batch(cfg);
  for (const RunRow& row : result.rows) {
    CHECK(row.initial_uncertainty == 0.0);
    CHECK(row.final_uncertainty == 0.0);
    CHECK(row.efficiency >= 0.0);
    CHECK(row.efficiency <= 1.0 + 1e-9);
  }
}

TEST_CASE("interval rows tighten uncertainty without erasing it") {
  BatchConfig cfg = desk_batch();
  cfg.variants = {Variant::kImlca};
  ExperimentResult result = run_batch(cfg);
  for (const RunRow& row : result.rows) {
    CHECK(row.initial_uncertainty > 0.0);
    CHECK(row.final_uncertainty <= row.initial_uncertainty + 1e-12);
    CHECK(row.efficiency >= 0.0);
    CHECK(row.efficiency <= 1.0 + 1e-9);
  }
}

TEST_CASE("a full query budget makes the exact baseline fully efficient") {
  BatchConfig cfg = desk_batch();
  cfg.domain.items = 3;
  cfg.domain.interest_size = 2;
  cfg.mechanism.q_init = 7;  // covers the whole non-empty bundle space
  cfg.mechanism.q_max = 7;
  cfg.variants = {Variant::kMlcaExact};
  cfg.seeds = {201, 202, 203};
  ExperimentResult result = run_batch(cfg);
  for (const RunRow& row : result.rows)
    CHECK(row.efficiency == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("csv round-trips the rows exactly") {
  BatchConfig cfg = desk_batch();
  cfg.variants = {Variant::kImlca, Variant::kMlcaExact};
  cfg.seeds = {101, 102};
  ExperimentResult result = run_batch(cfg);
  const std::string csv = rows_to_csv(result.rows);
  const std::vector<RunRow> parsed = rows_from_csv(csv);
  REQUIRE(parsed.size() == result.rows.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed[i].seed == result.rows[i].seed);
    CHECK(parsed[i].variant == result.rows[i].variant);
    CHECK(parsed[i].failed == result.rows[i].failed);
    CHECK(parsed[i].efficiency == result.rows[i].efficiency);
    CHECK(parsed[i].relative_revenue == result.rows[i].relative_revenue);
    CHECK(parsed[i].total_rounds == result.rows[i].total_rounds);
    CHECK(parsed[i].mrpar_refinements == result.rows[i].mrpar_refinements);
    CHECK(parsed[i].total_refinements == result.rows[i].total_refinements);
    CHECK(parsed[i].initial_uncertainty == result.rows[i].initial_uncertainty);
    CHECK(parsed[i].final_uncertainty == result.rows[i].final_uncertainty);
    CHECK(parsed[i].terminal_omega == result.rows[i].terminal_omega);
  }
}

TEST_CASE("reruns of one configuration are deterministic") {
  BatchConfig cfg = desk_batch();
  cfg.variants = {Variant::kImlca};
  cfg.seeds = {101, 102};
  ExperimentResult a = run_batch(cfg);
  ExperimentResult b = run_batch(cfg);

  // Every data column matches; wall-clock is the lone nondeterministic
  // field, so compare the CSV with that column blanked.
  auto strip_wall = [](std::vector<RunRow> rows) {
    for (RunRow& r : rows) r.wall_seconds = 0.0;
    return rows_to_csv(rows);
  };
  CHECK(strip_wall(a.rows) == strip_wall(b.rows));
  CHECK(aggregates_to_json(a) == aggregates_to_json(b));
}

TEST_CASE("aggregates are recomputable from the rows") {
  BatchConfig cfg = desk_batch();
  cfg.variants = {Variant::kImlca};
  ExperimentResult result = run_batch(cfg);
  const auto recomputed = aggregate_rows(result.rows);
  REQUIRE(recomputed.size() == result.aggregates.size());
  for (std::size_t i = 0; i < recomputed.size(); ++i) {
    CHECK(recomputed[i].runs == result.aggregates[i].runs);
    for (const auto& [metric, m] : recomputed[i].metrics) {
      CHECK(m.mean ==
            doctest::Approx(result.aggregates[i].metrics.at(metric).mean));
      CHECK(m.stderr_ ==
            doctest::Approx(result.aggregates[i].metrics.at(metric).stderr_));
    }
  }
}
