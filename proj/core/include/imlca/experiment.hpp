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

#include <map>
#include <string>
#include <vector>

#include "imlca/auction.hpp"
#include "imlca/instance.hpp"

namespace imlca {

enum class TraceMode { kNone, kJson };

struct BatchConfig {
  SyntheticDomainSpec domain;    // per-run seed overrides the field here
  MechanismConfig mechanism;     // per-run master seed overrides the field
  double mu = 0.5;               // forced to 0 for the exact baseline
  std::vector<Variant> variants = {Variant::kImlca};
  std::vector<std::uint64_t> seeds;
  std::string out_dir;           // required for trace output
  TraceMode trace = TraceMode::kNone;
  int parallelism = 0;  // 0: IMLCA_PARALLELISM env var, then hardware
};

struct RunRow {
  std::uint64_t seed = 0;
  Variant variant = Variant::kImlca;
  bool failed = false;
  std::string error;
  double efficiency = 0.0;
  double relative_revenue = 0.0;
  int total_rounds = 0;
  int ml_rounds = 0;
  int refine_rounds = 0;
  int mrpar_refinements = 0;
  int total_refinements = 0;
  double initial_uncertainty = 0.0;
  double final_uncertainty = 0.0;
  double terminal_omega = 0.0;
  double wall_seconds = 0.0;
};

// Mean and standard error of one metric across a variant's rows.
struct MetricAggregate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

struct VariantAggregate {
  Variant variant = Variant::kImlca;
  int runs = 0;
  std::map<std::string, MetricAggregate> metrics;
};

struct ExperimentResult {
  std::vector<RunRow> rows;  // sorted by (seed, variant)
  std::vector<VariantAggregate> aggregates;
  bool any_failed = false;
};

// Runs every (seed, variant) pair, scoring efficiency and revenue against
// the exact optimum. Per-run failures become error rows; the batch
// continues.
ExperimentResult run_batch(const BatchConfig& config);

// Fixed-column CSV of the row-level results; parsing it back reproduces the
// rows exactly. The wall_seconds column is the only nondeterministic one.
std::string rows_to_csv(const std::vector<RunRow>& rows);
std::vector<RunRow> rows_from_csv(const std::string& csv);

// Aggregate means and standard errors, deterministic byte-for-byte.
std::string aggregates_to_json(const ExperimentResult& result);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// Recomputes the aggregates from rows (failures excluded).
std::vector<VariantAggregate> aggregate_rows(const std::vector<RunRow>& rows);

}  // namespace imlca
