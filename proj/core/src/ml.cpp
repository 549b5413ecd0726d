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

#include "imlca/ml.hpp"

#include <algorithm>
#include <bit>

#include "imlca/errors.hpp"
#include "imlca/numeric.hpp"
#include "imlca/partition_dp.hpp"
#include "imlca/solver/qp.hpp"

namespace imlca {
namespace {

double kernel_eval(const Bundle& a, const Bundle& b, double offset) {
  double dot = 0.0;
  for (std::size_t j = 0; j < a.item_count(); ++j)
    if (a.contains(j) && b.contains(j)) dot += 1.0;
  const double base = dot + offset;
  return base * base;
}

double kernel_eval_mask(std::uint64_t a, std::uint64_t b, double offset) {
  const double base =
      static_cast<double>(std::popcount(a & b)) + offset;
  return base * base;
}

}  // namespace

double KernelModel::predict(const Bundle& x) const {
  if (x.is_empty()) return 0.0;
  double raw = 0.0;
  for (std::size_t k = 0; k < training_.size(); ++k)
    raw += coeffs_[k] * kernel_eval(training_[k], x, params_.offset);
  return std::max(0.0, raw);
}

std::vector<double> KernelModel::value_table(std::size_t item_count) const {
  if (item_count > 16)
    throw TooLargeError("value table limited to 16 items");
  const std::size_t size = std::size_t{1} << item_count;
  std::vector<double> table(size, 0.0);
  std::vector<std::uint64_t> tm(training_.size());
  for (std::size_t k = 0; k < training_.size(); ++k)
    tm[k] = training_[k].to_mask();
  for (std::size_t mask = 1; mask < size; ++mask) {
    double raw = 0.0;
    for (std::size_t k = 0; k < training_.size(); ++k)
      raw += coeffs_[k] * kernel_eval_mask(tm[k], mask, params_.offset);
    table[mask] = std::max(0.0, raw);
  }
  return table;
}

KernelModel fit_interval_model(const ReportSet& reports,
                               const KernelParams& params) {
  if (reports.size() == 0) throw InvalidSpecError("fit needs reports");
  KernelModel model;
  model.params_ = params;
  for (const IntervalReport& r : reports.reports())
    if (!r.bundle.is_empty()) model.training_.push_back(r.bundle);
  const std::size_t k = model.training_.size();
  model.coeffs_.assign(k, 0.0);
  if (k == 0) return model;  // predicts 0 everywhere

  Eigen::MatrixXd gram(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b <= a; ++b) {
      const double v =
          kernel_eval(model.training_[a], model.training_[b], params.offset);
      gram(a, b) = v;
      gram(b, a) = v;
    }
  Eigen::VectorXd lo(k), up(k);
  {
    std::size_t q = 0;
    for (const IntervalReport& r : reports.reports()) {
      if (r.bundle.is_empty()) continue;
      lo(q) = r.lower;
      up(q) = r.upper;
      ++q;
    }
  }

  // Dual of the two-sided-slack program over y = [alpha; alphabar]:
  //   min 1/2 (alpha - alphabar)' K (alpha - alphabar) - lo'alpha + up'alphabar
  //   s.t. 0 <= alpha, alphabar <= C.
  const std::size_t nn = 2 * k;
  QpProblem qp;
  qp.quadratic.setZero(nn, nn);
  qp.quadratic.topLeftCorner(k, k) = gram;
  qp.quadratic.bottomRightCorner(k, k) = gram;
  qp.quadratic.topRightCorner(k, k) = -gram;
  qp.quadratic.bottomLeftCorner(k, k) = -gram;
  qp.linear.setZero(nn);
  qp.linear.head(k) = -lo;
  qp.linear.tail(k) = up;
  qp.lower.assign(nn, 0.0);
  qp.upper.assign(nn, params.regularization);

  QpResult res = solve_qp(qp, Eigen::VectorXd::Zero(nn));
  if (res.status != QpStatus::kOptimal)
    throw SolverError("interval regression fit failed");
  for (std::size_t q = 0; q < k; ++q)
    model.coeffs_[q] = res.x(q) - res.x(k + q);
  return model;
}

namespace {

std::vector<std::optional<Bundle>> next_query_on_tables(
    const std::vector<std::vector<double>>& bidder_tables,
    const ReportProfile& reports, const Economy& economy, std::size_t m) {
  const std::size_t n = reports.size();
  const std::size_t size = std::size_t{1} << m;

  for (std::size_t i = 0; i < n; ++i)
    if (economy.includes(static_cast<int>(i)) && reports[i].size() >= size)
      throw BundleSpaceError("bidder has reported every bundle");

  std::vector<std::vector<double>> tables(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (economy.includes(static_cast<int>(i))) {
      tables[i] = bidder_tables[i];
    } else {
      tables[i].assign(size, -kInf);
      tables[i][0] = 0.0;  // omitted bidders take the empty bundle
    }
  }
  PartitionResult base = max_weight_partition(m, tables);

  std::vector<std::optional<Bundle>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!economy.includes(static_cast<int>(i))) continue;
    Bundle assigned = Bundle::from_mask(m, base.masks[i]);
    if (reports[i].contains(assigned)) {
      // Re-solve with this bidder restricted to unreported bundles.
      std::vector<double> saved = tables[i];
      for (const IntervalReport& r : reports[i].reports())
        tables[i][r.bundle.to_mask()] = -kInf;
      PartitionResult excl = max_weight_partition(m, tables);
      assigned = Bundle::from_mask(m, excl.masks[i]);
      tables[i] = std::move(saved);
    }
    out[i] = assigned;
  }
  return out;
}

}  // namespace

std::vector<std::optional<Bundle>> next_query(
    const std::vector<KernelModel>& models, const ReportProfile& reports,
    const Economy& economy) {
  const std::size_t n = reports.size();
  if (models.size() != n)
    throw InvalidSpecError("one model per bidder required");
  const std::size_t m = reports.empty() ? 0 : reports[0].item_count();
  if (m > 16) throw TooLargeError("query generation limited to 16 items");
  std::vector<std::vector<double>> tables(n);
  for (std::size_t i = 0; i < n; ++i) tables[i] = models[i].value_table(m);
  return next_query_on_tables(tables, reports, economy, m);
}

QueryPlan generate_round_queries(const ReportProfile& reports,
                                 const QueryPlanParams& params) {
  const std::size_t n = reports.size();
  const std::size_t q_round = params.q_round == 0 ? n : params.q_round;
  auto frozen = [&](std::size_t i) {
    return i < params.frozen.size() && params.frozen[i];
  };

  // Remaining lifetime budget decides who participates at all.
  std::vector<std::size_t> budget(n, 0);
  bool anyone = false;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t used = reports[i].queried_size();
    budget[i] = (frozen(i) || used >= params.q_max)
                    ? 0
                    : std::min(q_round, params.q_max - used);
    anyone = anyone || budget[i] > 0;
  }
  QueryPlan plan;
  plan.per_bidder.resize(n);
  if (!anyone) return plan;

  const std::size_t m = reports.empty() ? 0 : reports[0].item_count();
  if (m > 16) throw TooLargeError("query generation limited to 16 items");
  // One fit and one value table per bidder, shared across the economies.
  std::vector<std::vector<double>> tables(n);
  for (std::size_t i = 0; i < n; ++i)
    tables[i] = fit_interval_model(reports[i], params.kernel).value_table(m);

  const auto main_bundles =
      next_query_on_tables(tables, reports, Economy::main(), m);
  std::vector<std::vector<std::optional<Bundle>>> marginal_bundles(n);
  if (n > 1) {
    for (std::size_t j = 0; j < n; ++j)
      marginal_bundles[j] = next_query_on_tables(
          tables, reports, Economy::marginal(static_cast<int>(j)), m);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (budget[i] == 0) continue;
    std::vector<Bundle> candidates;
    if (main_bundles[i]) candidates.push_back(*main_bundles[i]);
    // Marginal economies take turns across rounds.
    if (n > 1) {
      for (std::size_t t = 0; t < n; ++t) {
        const std::size_t j = (i + 1 + t + params.round_index) % n;
        if (j == i) continue;
        if (marginal_bundles[j][i]) candidates.push_back(*marginal_bundles[j][i]);
      }
    }
    for (const Bundle& b : candidates) {
      if (plan.per_bidder[i].size() >= budget[i]) break;
      if (reports[i].contains(b)) continue;
      if (std::find(plan.per_bidder[i].begin(), plan.per_bidder[i].end(), b) !=
          plan.per_bidder[i].end())
        continue;
      plan.per_bidder[i].push_back(b);
    }
  }
  return plan;
}

}  // namespace imlca
