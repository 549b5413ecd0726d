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

#include "imlca/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "imlca/errors.hpp"
#include "imlca/valuation.hpp"

namespace imlca {
namespace {

// Shortest exact decimal form: parsing reproduces the double bit-for-bit.
std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int resolve_parallelism(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("IMLCA_PARALLELISM")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

RunRow execute_run(const BatchConfig& config, std::uint64_t seed,
                   Variant variant, const Instance& instance,
                   double optimum_value) {
  RunRow row;
  row.seed = seed;
  row.variant = variant;
  const auto begin = std::chrono::steady_clock::now();
  try {
    MechanismConfig mech = config.mechanism;
    mech.variant = variant;
    mech.master_seed = seed;

    SimBidderParams bidder_params;
    bidder_params.mu = variant == Variant::kMlcaExact ? 0.0 : config.mu;
    Rng noise_root(seed ^ 0x5eedULL);
    std::vector<SimBidder> sims;
    sims.reserve(instance.valuations.size());
    for (std::size_t i = 0; i < instance.valuations.size(); ++i)
      sims.emplace_back(&instance.valuations[i], bidder_params,
                        noise_root.fork(i));
    std::vector<Bidder*> bidders;
    for (SimBidder& s : sims) bidders.push_back(&s);

    AuctionResult result =
        run_auction(instance.spec.items, bidders, mech);

    const ValuationView truth = ValuationView::truth(instance.oracles());
    row.efficiency =
        efficiency(truth, result.outcome.allocation, optimum_value);
    row.relative_revenue =
        relative_revenue(result.outcome.payments, optimum_value);
    row.ml_rounds = result.trace.ml_rounds;
    row.refine_rounds = result.trace.refine_rounds;
    row.total_rounds = result.trace.ml_rounds + result.trace.refine_rounds;
    row.mrpar_refinements = result.trace.mrpar_refinements;
    row.total_refinements = result.trace.total_refinements;
    row.initial_uncertainty = result.trace.initial_uncertainty;
    row.final_uncertainty = result.trace.final_uncertainty;
    row.terminal_omega = result.trace.terminal_omega;

    if (config.trace == TraceMode::kJson && !config.out_dir.empty()) {
      const std::string path = config.out_dir + "/trace_" +
                               std::to_string(seed) + "_" +
                               variant_name(variant) + ".json";
      write_file(path, result.trace.to_json());
    }
  } catch (const std::exception& e) {
    row.failed = true;
    row.error = e.what();
  }
  row.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - begin)
          .count();
  return row;
}

}  // namespace

std::vector<VariantAggregate> aggregate_rows(const std::vector<RunRow>& rows) {
  struct Bucket {
    std::map<std::string, std::vector<double>> samples;
    int runs = 0;
  };
  std::map<std::string, Bucket> buckets;  // keyed by variant name
  for (const RunRow& row : rows) {
    if (row.failed) continue;
    Bucket& b = buckets[variant_name(row.variant)];
    ++b.runs;
    b.samples["efficiency"].push_back(row.efficiency);
    b.samples["relative_revenue"].push_back(row.relative_revenue);
    b.samples["total_rounds"].push_back(row.total_rounds);
    b.samples["mrpar_refinements"].push_back(row.mrpar_refinements);
    b.samples["total_refinements"].push_back(row.total_refinements);
    b.samples["initial_uncertainty"].push_back(row.initial_uncertainty);
    b.samples["final_uncertainty"].push_back(row.final_uncertainty);
    b.samples["terminal_omega"].push_back(row.terminal_omega);
  }
  std::vector<VariantAggregate> out;
  for (auto& [name, bucket] : buckets) {
    VariantAggregate agg;
    agg.variant = *variant_from_name(name);
    agg.runs = bucket.runs;
    for (auto& [metric, values] : bucket.samples) {
      MetricAggregate m;
      double sum = 0.0;
      for (double v : values) sum += v;
      m.mean = values.empty() ? 0.0 : sum / values.size();
      if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - m.mean) * (v - m.mean);
        m.stderr_ = std::sqrt(ss / (values.size() - 1)) /
                    std::sqrt(static_cast<double>(values.size()));
      }
      agg.metrics[metric] = m;
    }
    out.push_back(std::move(agg));
  }
  return out;
}

ExperimentResult run_batch(const BatchConfig& config) {
  if (config.seeds.empty()) throw InvalidSpecError("batch needs seeds");
  if (config.variants.empty()) throw InvalidSpecError("batch needs variants");
  if (config.trace == TraceMode::kJson && !config.out_dir.empty())
    std::filesystem::create_directories(config.out_dir);

  // Instances and optima are shared across variants of the same seed.
  std::vector<Instance> instances;
  std::vector<double> optima;
  instances.reserve(config.seeds.size());
  for (std::uint64_t seed : config.seeds) {
    SyntheticDomainSpec domain = config.domain;
    domain.seed = seed;
    instances.push_back(generate_instance(domain));
    optima.push_back(brute_force_optimum(instances.back()).second);
  }

  struct Task {
    std::size_t seed_index;
    Variant variant;
  };
  std::vector<Task> tasks;
  for (std::size_t s = 0; s < config.seeds.size(); ++s)
    for (Variant v : config.variants) tasks.push_back({s, v});

  ExperimentResult result;
  result.rows.resize(tasks.size());
  std::atomic<std::size_t> cursor{0};
  const int workers =
      std::min<int>(resolve_parallelism(config.parallelism),
                    static_cast<int>(tasks.size()));
  auto worker = [&]() {
    for (;;) {
      const std::size_t t = cursor.fetch_add(1);
      if (t >= tasks.size()) return;
      const Task& task = tasks[t];
      result.rows[t] =
          execute_run(config, config.seeds[task.seed_index], task.variant,
                      instances[task.seed_index], optima[task.seed_index]);
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  for (const RunRow& row : result.rows) result.any_failed |= row.failed;
  result.aggregates = aggregate_rows(result.rows);
  return result;
}

std::string rows_to_csv(const std::vector<RunRow>& rows) {
  std::ostringstream out;
  out << "seed,variant,failed,error,efficiency,relative_revenue,total_rounds,"
         "ml_rounds,refine_rounds,mrpar_refinements,total_refinements,"
         "initial_uncertainty,final_uncertainty,terminal_omega,wall_seconds\n";
  for (const RunRow& r : rows) {
    std::string err = r.error;
    for (char& c : err)
      if (c == ',' || c == '\n') c = ';';
    out << r.seed << ',' << variant_name(r.variant) << ',' << (r.failed ? 1 : 0)
        << ',' << err << ',' << format_double(r.efficiency) << ','
        << format_double(r.relative_revenue) << ',' << r.total_rounds << ','
        << r.ml_rounds << ',' << r.refine_rounds << ',' << r.mrpar_refinements
        << ',' << r.total_refinements << ','
        << format_double(r.initial_uncertainty) << ','
        << format_double(r.final_uncertainty) << ','
        << format_double(r.terminal_omega) << ','
        << format_double(r.wall_seconds) << '\n';
  }
  return out.str();
}

std::vector<RunRow> rows_from_csv(const std::string& csv) {
  std::vector<RunRow> rows;
  std::istringstream in(csv);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    while (fields.size() < 15) fields.emplace_back();
    RunRow r;
    r.seed = std::strtoull(fields[0].c_str(), nullptr, 10);
    const auto v = variant_from_name(fields[1]);
    if (!v) throw InvalidSpecError("unknown variant in CSV: " + fields[1]);
    r.variant = *v;
    r.failed = fields[2] == "1";
    r.error = fields[3];
    r.efficiency = std::strtod(fields[4].c_str(), nullptr);
    r.relative_revenue = std::strtod(fields[5].c_str(), nullptr);
    r.total_rounds = std::atoi(fields[6].c_str());
    r.ml_rounds = std::atoi(fields[7].c_str());
    r.refine_rounds = std::atoi(fields[8].c_str());
    r.mrpar_refinements = std::atoi(fields[9].c_str());
    r.total_refinements = std::atoi(fields[10].c_str());
    r.initial_uncertainty = std::strtod(fields[11].c_str(), nullptr);
    r.final_uncertainty = std::strtod(fields[12].c_str(), nullptr);
    r.terminal_omega = std::strtod(fields[13].c_str(), nullptr);
    r.wall_seconds = std::strtod(fields[14].c_str(), nullptr);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string aggregates_to_json(const ExperimentResult& result) {
  // Wall-clock is intentionally absent: the aggregate file stays
  // byte-identical across reruns of the same configuration.
  nlohmann::ordered_json root = nlohmann::ordered_json::array();
  for (const VariantAggregate& agg : result.aggregates) {
    nlohmann::ordered_json entry;
    entry["variant"] = variant_name(agg.variant);
    entry["runs"] = agg.runs;
    for (const auto& [metric, m] : agg.metrics) {
      entry[metric] = {{"mean", m.mean}, {"stderr", m.stderr_}};
    }
    root.push_back(entry);
  }
  return root.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace imlca
