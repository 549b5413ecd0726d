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

#include "imlca/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "imlca/allocation.hpp"
#include "imlca/errors.hpp"
#include "imlca/numeric.hpp"
#include "imlca/solver/lp.hpp"
#include "imlca/solver/qp.hpp"
#include "imlca/solver/wdp.hpp"

namespace imlca {
namespace {

// Numerical slack on pinned rows: swallows LP round-off without affecting
// any contract evaluated at the 1e-6 value tolerance. A violation counts as
// positive only beyond the value tolerance.
constexpr double kPinSlack = 1e-9;
constexpr double kPositiveTol = 1e-6;

// One clearing row per report: gap_r(pi) = d_r + a_r . pi_free, the utility
// a bidder would gain by swapping its provisional bundle for report r at
// prices pi. Only prices of allocated items are variables; unallocated items
// are priced exactly 0 and eliminated up front.
struct GapRows {
  std::vector<std::vector<double>> a;  // coefficients over free items
  std::vector<double> d;
  std::vector<std::pair<std::size_t, std::size_t>> id;  // (bidder, report)

  std::size_t size() const { return d.size(); }
  double gap(std::size_t r, const std::vector<double>& pi_free) const {
    double g = d[r];
    for (std::size_t j = 0; j < pi_free.size(); ++j)
      g += a[r][j] * pi_free[j];
    return g;
  }
};

// Hard price-space constraint a . pi_free <= ub carried between stages.
struct HardRow {
  std::vector<double> a;
  double ub;
};

std::vector<std::size_t> allocated_items(const Allocation& alloc,
                                         std::size_t m) {
  std::vector<std::size_t> items;
  for (std::size_t j = 0; j < m; ++j) {
    bool used = false;
    for (std::size_t i = 0; i < alloc.bidder_count() && !used; ++i)
      used = alloc.of(i).contains(j);
    if (used) items.push_back(j);
  }
  return items;
}

GapRows build_gap_rows(const ValuationView& view, const Allocation& alloc,
                       const ReportProfile& reports,
                       const std::vector<std::size_t>& free_items) {
  GapRows rows;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const Bundle& own = alloc.of(i);
    const double own_value = view.value(i, own);
    for (std::size_t k = 0; k < reports[i].size(); ++k) {
      const Bundle& x = reports[i].at(k).bundle;
      std::vector<double> coef(free_items.size(), 0.0);
      for (std::size_t f = 0; f < free_items.size(); ++f) {
        const std::size_t j = free_items[f];
        coef[f] = (own.contains(j) ? 1.0 : 0.0) - (x.contains(j) ? 1.0 : 0.0);
      }
      rows.a.push_back(std::move(coef));
      rows.d.push_back(view.value(i, x) - own_value);
      rows.id.emplace_back(i, k);
    }
  }
  return rows;
}

// Stage 1 of the clearing procedure: minimize the worst violation.
struct StageOne {
  double delta_max = 0.0;
  std::vector<double> pi;
};

StageOne minimize_max_delta(const GapRows& rows,
                            const std::vector<HardRow>& retained,
                            std::size_t nf) {
  LpProblem lp;
  lp.sense = Sense::kMinimize;
  lp.objective.assign(nf + 1, 0.0);
  lp.objective[nf] = 1.0;
  lp.lower.assign(nf + 1, 0.0);
  lp.lower[nf] = -kInf;
  lp.upper.assign(nf + 1, kInf);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    LinearConstraint c;
    c.coeffs = rows.a[r];
    c.coeffs.push_back(-1.0);
    c.cmp = Cmp::kLe;
    c.rhs = -rows.d[r];
    lp.constraints.push_back(std::move(c));
  }
  for (const HardRow& h : retained) {
    LinearConstraint c;
    c.coeffs = h.a;
    c.coeffs.push_back(0.0);
    c.cmp = Cmp::kLe;
    c.rhs = h.ub;
    lp.constraints.push_back(std::move(c));
  }
  LpResult res = solve_lp(lp);
  if (res.status != LpStatus::kOptimal)
    throw SolverError("max-violation stage failed");
  StageOne out;
  out.delta_max = res.objective;
  out.pi.assign(res.x.begin(), res.x.begin() + nf);
  return out;
}

// Stage 2: among prices respecting the worst violation, minimize how many
// reports remain violated. Branch and bound on per-report indicators with LP
// relaxations; every relaxation point rounds to a feasible incumbent.
struct StageTwo {
  std::vector<double> pi;
  std::vector<bool> positive;  // violation pattern at the incumbent
  int count = 0;
  bool suboptimal = false;
};

StageTwo minimize_positive_count(const GapRows& rows,
                                 const std::vector<HardRow>& retained,
                                 double delta_max,
                                 const PricingOptions& options,
                                 const std::vector<double>& start_pi,
                                 std::size_t nf) {
  const std::size_t nr = rows.size();

  struct Node {
    std::vector<signed char> fix;  // -1 free, 0 forced clear, 1 allowed
  };

  // Logical pre-fixing from per-item price caps. Every bidder reports the
  // empty bundle, whose row bounds the winner's bundle price by its value
  // plus delta_max; items outside any winning bundle are not variables at
  // all. Rows that can never clear get fixed positive, rows that always
  // clear leave the search entirely.
  std::vector<double> price_cap(nf, 0.0);
  {
    std::vector<double> own_value(rows.size(), 0.0);
    // The empty-bundle row of bidder i reads d = -value(own bundle) and has
    // +1 coefficients exactly on the winner's items.
    std::vector<double> item_cap(nf, kInf);
    for (std::size_t r = 0; r < nr; ++r) {
      bool empty_row = rows.d[r] <= 0.0;
      for (std::size_t j = 0; j < nf && empty_row; ++j)
        if (rows.a[r][j] < 0.0) empty_row = false;
      if (!empty_row) continue;
      const double cap = -rows.d[r] + std::max(0.0, delta_max) + 1.0;
      for (std::size_t j = 0; j < nf; ++j)
        if (rows.a[r][j] > 0.0) item_cap[j] = std::min(item_cap[j], cap);
    }
    for (std::size_t j = 0; j < nf; ++j)
      price_cap[j] = std::isfinite(item_cap[j]) ? item_cap[j] : kInf;
  }

  Node root{std::vector<signed char>(nr, -1)};
  int prefixed_positive = 0;
  for (std::size_t r = 0; r < nr; ++r) {
    double gap_low = rows.d[r], gap_high = rows.d[r];
    for (std::size_t j = 0; j < nf; ++j) {
      if (rows.a[r][j] < 0.0) gap_low -= price_cap[j];
      if (rows.a[r][j] > 0.0) gap_high += price_cap[j];
    }
    if (gap_high <= 0.0) {
      root.fix[r] = 0;  // clears at every admissible price vector
    } else if (gap_low > kPositiveTol && std::isfinite(gap_low)) {
      root.fix[r] = 1;  // can never clear
      ++prefixed_positive;
    }
  }
  (void)prefixed_positive;

  auto relax = [&](const Node& node) -> std::optional<LpResult> {
    LpProblem lp;
    lp.sense = Sense::kMinimize;
    std::vector<int> zcol(nr, -1);
    int extra = 0;
    for (std::size_t r = 0; r < nr; ++r)
      if (node.fix[r] < 0) zcol[r] = static_cast<int>(nf) + extra++;
    lp.objective.assign(nf + extra, 0.0);
    lp.lower.assign(nf + extra, 0.0);
    lp.upper.assign(nf + extra, kInf);
    for (std::size_t r = 0; r < nr; ++r) {
      if (zcol[r] >= 0) {
        lp.objective[zcol[r]] = 1.0;
        lp.upper[zcol[r]] = 1.0;
      }
    }
    for (std::size_t r = 0; r < nr; ++r) {
      LinearConstraint c;
      c.coeffs.assign(nf + extra, 0.0);
      for (std::size_t j = 0; j < nf; ++j) c.coeffs[j] = rows.a[r][j];
      c.cmp = Cmp::kLe;
      if (node.fix[r] == 0) {
        c.rhs = -rows.d[r] + kPinSlack;
      } else if (node.fix[r] == 1) {
        c.rhs = delta_max - rows.d[r] + kPinSlack;
      } else {
        c.coeffs[zcol[r]] = -delta_max;
        c.rhs = -rows.d[r];
      }
      lp.constraints.push_back(std::move(c));
    }
    for (const HardRow& h : retained) {
      LinearConstraint c;
      c.coeffs = h.a;
      c.coeffs.resize(nf + extra, 0.0);
      c.cmp = Cmp::kLe;
      c.rhs = h.ub;
      lp.constraints.push_back(std::move(c));
    }
    LpResult res = solve_lp(lp);
    if (res.status != LpStatus::kOptimal) return std::nullopt;
    return res;
  };

  StageTwo best;
  best.pi = start_pi;
  best.positive.assign(nr, false);
  for (std::size_t r = 0; r < nr; ++r) {
    if (rows.gap(r, start_pi) > kPositiveTol) {
      best.positive[r] = true;
      ++best.count;
    }
  }

  const auto deadline =
      options.count_time_cap
          ? std::optional(std::chrono::steady_clock::now() +
                          *options.count_time_cap)
          : std::nullopt;
  // Proving count optimality is the dominant cost of the whole round; the
  // mechanism only consumes the violation pattern, so the dive budget stays
  // small. The LP bound certifies optimality at the root in the easy cases.
  const int node_cap = options.count_node_cap;
  int nodes = 0;

  std::vector<Node> stack;
  stack.push_back(std::move(root));
  while (!stack.empty()) {
    if (++nodes > node_cap ||
        (deadline && std::chrono::steady_clock::now() > *deadline)) {
      best.suboptimal = true;
      break;
    }
    Node node = std::move(stack.back());
    stack.pop_back();

    int forced = 0;
    for (std::size_t r = 0; r < nr; ++r)
      if (node.fix[r] == 1) ++forced;
    if (forced >= best.count) continue;

    auto res = relax(node);
    if (!res) continue;
    const double bound = res->objective + forced;
    if (static_cast<int>(std::ceil(bound - 1e-6)) >= best.count) continue;

    // Round the relaxation point to an incumbent.
    std::vector<double> pi(res->x.begin(), res->x.begin() + nf);
    std::vector<bool> pattern(nr, false);
    int count = 0;
    for (std::size_t r = 0; r < nr; ++r) {
      if (rows.gap(r, pi) > kPositiveTol) {
        pattern[r] = true;
        ++count;
      }
    }
    if (count < best.count) {
      best.pi = pi;
      best.positive = pattern;
      best.count = count;
    }
    if (static_cast<int>(std::ceil(bound - 1e-6)) >= best.count) continue;

    // Branch on the most fractional indicator, lowest row index on ties.
    int branch = -1;
    double score = -1.0;
    int extra = 0;
    for (std::size_t r = 0; r < nr; ++r) {
      if (node.fix[r] >= 0) continue;
      const double z = res->x[nf + extra++];
      const double frac = 0.5 - std::fabs(z - 0.5);
      if (frac > score + 1e-12) {
        score = frac;
        branch = static_cast<int>(r);
      }
    }
    if (branch < 0 || score < 1e-7) continue;  // integral relaxation
    Node one = node;
    one.fix[branch] = 1;
    Node zero = std::move(node);
    zero.fix[branch] = 0;
    stack.push_back(std::move(one));
    stack.push_back(std::move(zero));  // explored first
  }
  return best;
}

// Norm-minimal violations over the positive pattern. Cleared rows only
// contribute the constraint gap <= 0, where the optimal slack is 0, so they
// drop out of the objective. Returns the full per-row violation bound.
struct NormMin {
  std::vector<double> pi;
  std::vector<double> dstar;
};

NormMin minimize_norm(const GapRows& rows, const std::vector<bool>& positive,
                      double delta_max, const std::vector<HardRow>& retained,
                      const std::vector<double>& start_pi, std::size_t nf) {
  std::vector<std::size_t> unpinned;
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (positive[r]) unpinned.push_back(r);

  NormMin out;
  out.dstar.assign(rows.size(), 0.0);
  if (unpinned.empty()) {
    out.pi = start_pi;
    return out;
  }

  const std::size_t nu = unpinned.size();
  QpProblem qp;
  qp.quadratic = Eigen::MatrixXd::Zero(nf + nu, nf + nu);
  for (std::size_t q = 0; q < nu; ++q) qp.quadratic(nf + q, nf + q) = 2.0;
  qp.linear = Eigen::VectorXd::Zero(nf + nu);
  qp.lower.assign(nf + nu, 0.0);
  qp.upper.assign(nf + nu, kInf);
  for (std::size_t q = 0; q < nu; ++q) {
    qp.lower[nf + q] = -kInf;
    qp.upper[nf + q] = delta_max + kPinSlack;
  }
  for (std::size_t q = 0; q < nu; ++q) {
    const std::size_t r = unpinned[q];
    LinearConstraint c;  // delta_q >= gap_r(pi)
    c.coeffs.assign(nf + nu, 0.0);
    for (std::size_t j = 0; j < nf; ++j) c.coeffs[j] = -rows.a[r][j];
    c.coeffs[nf + q] = 1.0;
    c.cmp = Cmp::kGe;
    c.rhs = rows.d[r];
    qp.constraints.push_back(std::move(c));
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (positive[r]) continue;
    LinearConstraint c;
    c.coeffs.assign(nf + nu, 0.0);
    for (std::size_t j = 0; j < nf; ++j) c.coeffs[j] = rows.a[r][j];
    c.cmp = Cmp::kLe;
    c.rhs = -rows.d[r] + kPinSlack;
    qp.constraints.push_back(std::move(c));
  }
  for (const HardRow& h : retained) {
    LinearConstraint c;
    c.coeffs = h.a;
    c.coeffs.resize(nf + nu, 0.0);
    c.cmp = Cmp::kLe;
    c.rhs = h.ub;
    qp.constraints.push_back(std::move(c));
  }

  Eigen::VectorXd start = Eigen::VectorXd::Zero(nf + nu);
  for (std::size_t j = 0; j < nf; ++j) start(j) = start_pi[j];
  for (std::size_t q = 0; q < nu; ++q)
    start(nf + q) = std::min(rows.gap(unpinned[q], start_pi) + kPinSlack,
                             delta_max + kPinSlack);

  QpResult res = solve_qp(qp, start);
  if (res.status != QpStatus::kOptimal)
    throw SolverError("norm-minimization stage failed");
  out.pi.assign(nf, 0.0);
  for (std::size_t j = 0; j < nf; ++j) out.pi[j] = res.x(j);
  for (std::size_t q = 0; q < nu; ++q) out.dstar[unpinned[q]] = res.x(nf + q);
  return out;
}

// Sum-maximal prices subject to per-row violation bounds, then the
// deterministic norm-minimal tie break over the sum-maximal face.
std::vector<double> maximize_prices(const GapRows& rows,
                                    const std::vector<double>& row_ub,
                                    const std::vector<HardRow>& retained,
                                    std::size_t nf) {
  if (nf == 0) return {};
  LpProblem lp;
  lp.sense = Sense::kMaximize;
  lp.objective.assign(nf, 1.0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    LinearConstraint c;
    c.coeffs = rows.a[r];
    c.cmp = Cmp::kLe;
    c.rhs = row_ub[r] - rows.d[r] + kPinSlack;
    lp.constraints.push_back(std::move(c));
  }
  for (const HardRow& h : retained)
    lp.constraints.push_back({h.a, Cmp::kLe, h.ub});
  LpResult res = solve_lp(lp);
  if (res.status != LpStatus::kOptimal)
    throw SolverError("price maximization failed");

  QpProblem qp;
  qp.quadratic = 2.0 * Eigen::MatrixXd::Identity(nf, nf);
  qp.linear = Eigen::VectorXd::Zero(nf);
  qp.constraints = lp.constraints;
  LinearConstraint sum_row;
  sum_row.coeffs.assign(nf, 1.0);
  sum_row.cmp = Cmp::kEq;
  sum_row.rhs = res.objective;
  qp.constraints.push_back(std::move(sum_row));
  QpResult tied = solve_qp(
      qp, Eigen::Map<Eigen::VectorXd>(res.x.data(), static_cast<int>(nf)));
  if (tied.status != QpStatus::kOptimal)
    throw SolverError("price tie-break failed");
  std::vector<double> pi(nf, 0.0);
  for (std::size_t j = 0; j < nf; ++j) pi[j] = std::max(0.0, tied.x(j));
  return pi;
}

LinearPrices assemble_prices(const std::vector<double>& pi_free,
                             const std::vector<std::size_t>& free_items,
                             std::size_t m) {
  std::vector<double> full(m, 0.0);
  for (std::size_t f = 0; f < free_items.size(); ++f)
    full[free_items[f]] = std::max(0.0, pi_free[f]);
  return LinearPrices(std::move(full));
}

PriceSolution assemble_solution(const GapRows& rows,
                                const std::vector<double>& pi_free,
                                const std::vector<std::size_t>& free_items,
                                const ReportProfile& reports, double delta_max,
                                bool suboptimal) {
  PriceSolution sol;
  const std::size_t m = reports.empty() ? 0 : reports[0].item_count();
  sol.prices = assemble_prices(pi_free, free_items, m);
  sol.delta.resize(reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i)
    sol.delta[i].assign(reports[i].size(), 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double g = rows.gap(r, pi_free);
    sol.delta[rows.id[r].first][rows.id[r].second] = g;
    if (g > kPositiveTol) ++sol.positive_count;
  }
  sol.max_delta = delta_max;
  sol.suboptimal = suboptimal;
  return sol;
}

std::string format_stage(const char* name, double value) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%s=%.9g", name, value);
  return buf;
}

void validate_inputs(const ValuationView& view, const Allocation& alloc,
                     const ReportProfile& reports) {
  if (!is_feasible(alloc))
    throw InvalidSpecError("pricing needs a feasible allocation");
  for (std::size_t i = 0; i < reports.size(); ++i)
    if (!view.supported(i, alloc.of(i)))
      throw UnsupportedBundleError(
          "pricing allocation assigns an unsupported bundle");
}

// Shared core of the unique-price procedure: approximate clearing under
// v^alpha followed by the norm-minimal violation vector.
struct UniqueCore {
  std::vector<std::size_t> free_items;
  GapRows rows;
  double delta_max = 0.0;
  std::vector<bool> positive;
  std::vector<double> dstar;
  std::vector<double> pi;
  bool suboptimal = false;
};

UniqueCore unique_core(const ReportProfile& reports, double alpha,
                       const Allocation& alloc,
                       const PricingOptions& options) {
  ValuationView view = ValuationView::alpha(reports, alpha);
  validate_inputs(view, alloc, reports);
  const std::size_t m = reports.empty() ? 0 : reports[0].item_count();

  UniqueCore core;
  core.free_items = allocated_items(alloc, m);
  core.rows = build_gap_rows(view, alloc, reports, core.free_items);
  const std::size_t nf = core.free_items.size();

  StageOne s1 = minimize_max_delta(core.rows, {}, nf);
  core.delta_max = s1.delta_max;
  std::vector<double> pi = s1.pi;
  core.positive.assign(core.rows.size(), false);
  if (s1.delta_max > kPositiveTol) {
    StageTwo s2 =
        minimize_positive_count(core.rows, {}, s1.delta_max, options, pi, nf);
    pi = s2.pi;
    core.positive = s2.positive;
    core.suboptimal = s2.suboptimal;
  }
  NormMin nm =
      minimize_norm(core.rows, core.positive, core.delta_max, {}, pi, nf);
  core.dstar = nm.dstar;
  core.pi = nm.pi;
  return core;
}

std::vector<HardRow> rows_as_hard(const GapRows& rows,
                                  const std::vector<double>& ub) {
  std::vector<HardRow> hard;
  hard.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    hard.push_back({rows.a[r], ub[r] - rows.d[r] + kPinSlack});
  return hard;
}

}  // namespace

PriceSolution approx_clearing_prices(const ValuationView& view,
                                     const Allocation& alloc,
                                     const ReportProfile& reports,
                                     const PricingOptions& options) {
  validate_inputs(view, alloc, reports);
  const std::size_t m = reports.empty() ? 0 : reports[0].item_count();
  const auto free_items = allocated_items(alloc, m);
  const std::size_t nf = free_items.size();
  GapRows rows = build_gap_rows(view, alloc, reports, free_items);

  StageOne s1 = minimize_max_delta(rows, {}, nf);
  std::vector<double> pi = s1.pi;
  bool suboptimal = false;
  if (s1.delta_max > kPositiveTol) {
    StageTwo s2 =
        minimize_positive_count(rows, {}, s1.delta_max, options, pi, nf);
    pi = s2.pi;
    suboptimal = s2.suboptimal;
  }
  PriceSolution sol = assemble_solution(rows, pi, free_items, reports,
                                        s1.delta_max, suboptimal);
  sol.stage_log.push_back(format_stage("p4.delta_max", s1.delta_max));
  sol.stage_log.push_back(format_stage("p4.positive", sol.positive_count));
  return sol;
}

PriceSolution unique_prices(const ReportProfile& reports, double alpha,
                            const Allocation& alloc,
                            const PricingOptions& options) {
  UniqueCore core = unique_core(reports, alpha, alloc, options);
  const std::size_t nf = core.free_items.size();
  std::vector<double> pi = maximize_prices(core.rows, core.dstar, {}, nf);
  PriceSolution sol = assemble_solution(core.rows, pi, core.free_items,
                                        reports, core.delta_max,
                                        core.suboptimal);
  sol.stage_log.push_back(format_stage("p5.delta_max", core.delta_max));
  double norm = 0.0;
  for (double v : core.dstar) norm += v * v;
  sol.stage_log.push_back(format_stage("p5.norm2", norm));
  return sol;
}

PriceSolution effort_reduction_prices(const ReportProfile& reports,
                                      double alpha, const Allocation& alloc,
                                      double large_constant,
                                      const PricingOptions& options) {
  if (large_constant <= 0.0)
    throw InvalidSpecError("effort-reduction constant must be positive");

  // Unique-price core under v^alpha; its violation bounds stay active
  // through every later stage.
  UniqueCore core = unique_core(reports, alpha, alloc, options);
  const std::vector<HardRow> retained = rows_as_hard(core.rows, core.dstar);
  const std::size_t nf = core.free_items.size();

  // Approximate clearing re-run under the perturbed valuation.
  ValuationView perturbed = perturbed_view(reports, alloc);
  GapRows rows = build_gap_rows(perturbed, alloc, reports, core.free_items);
  bool suboptimal = core.suboptimal;

  if (nf == 0) {
    PriceSolution sol =
        assemble_solution(rows, {}, core.free_items, reports, 0.0, suboptimal);
    sol.stage_log.push_back("p6.empty-allocation");
    return sol;
  }

  StageOne s1 = minimize_max_delta(rows, retained, nf);
  std::vector<double> pi = s1.pi;
  std::vector<bool> positive(rows.size(), false);
  if (s1.delta_max > kPositiveTol) {
    StageTwo s2 =
        minimize_positive_count(rows, retained, s1.delta_max, options, pi, nf);
    pi = s2.pi;
    positive = s2.positive;
    suboptimal = suboptimal || s2.suboptimal;
  }

  // Push the still-violated reports' deltas as low as possible. Cleared rows
  // stay pinned at <= 0; each violated row r contributes
  // (gap_r(pi) + C)^2, so the quadratic lives entirely in price space.
  std::vector<std::size_t> unpinned;
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (positive[r]) unpinned.push_back(r);

  if (!unpinned.empty()) {
    QpProblem qp;
    qp.quadratic = Eigen::MatrixXd::Zero(nf, nf);
    qp.linear = Eigen::VectorXd::Zero(nf);
    for (std::size_t r : unpinned) {
      Eigen::Map<const Eigen::VectorXd> a(rows.a[r].data(),
                                          static_cast<int>(nf));
      qp.quadratic += 2.0 * a * a.transpose();
      qp.linear += 2.0 * (rows.d[r] + large_constant) * a;
    }
    qp.lower.assign(nf, 0.0);
    qp.upper.assign(nf, kInf);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      LinearConstraint c;
      c.coeffs = rows.a[r];
      c.cmp = Cmp::kLe;
      const double ub = positive[r] ? s1.delta_max : 0.0;
      c.rhs = ub - rows.d[r] + kPinSlack;
      qp.constraints.push_back(std::move(c));
    }
    for (const HardRow& h : retained)
      qp.constraints.push_back({h.a, Cmp::kLe, h.ub});
    QpResult res = solve_qp(
        qp, Eigen::Map<Eigen::VectorXd>(pi.data(), static_cast<int>(nf)));
    if (res.status != QpStatus::kOptimal)
      throw SolverError("effort-reduction push stage failed");
    for (std::size_t j = 0; j < nf; ++j) pi[j] = res.x(j);
  }

  // Sum-maximal prices holding the reached violations; norm-minimal tie
  // break last.
  std::vector<double> ub(rows.size(), 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r)
    ub[r] = positive[r] ? rows.gap(r, pi) : 0.0;
  pi = maximize_prices(rows, ub, retained, nf);

  PriceSolution sol = assemble_solution(rows, pi, core.free_items, reports,
                                        s1.delta_max, suboptimal);
  sol.stage_log.push_back(format_stage("p6.delta_max", s1.delta_max));
  sol.stage_log.push_back(format_stage("p6.positive", sol.positive_count));
  return sol;
}

bool is_clearing(const LinearPrices& prices, const Allocation& alloc,
                 const ValuationView& view, const ReportProfile& reports) {
  if (!is_feasible(alloc)) return false;
  const std::size_t m = prices.item_count();

  // Demand: each bidder weakly prefers its assigned bundle.
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const double own =
        view.value(i, alloc.of(i)) - prices.of_bundle(alloc.of(i));
    if (view.kind() == ViewKind::kTrue) {
      if (m > 24)
        throw TooLargeError("true-view clearing check limited to 24 items");
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        const Bundle x = Bundle::from_mask(m, mask);
        if (view.value(i, x) - prices.of_bundle(x) > own + kValueTol)
          return false;
      }
    } else {
      for (const IntervalReport& r : reports[i].reports())
        if (view.value(i, r.bundle) - prices.of_bundle(r.bundle) >
            own + kValueTol)
          return false;
    }
  }

  // Supply: no reported allocation yields more revenue.
  WdpProblem wdp;
  wdp.item_count = m;
  wdp.candidates.resize(reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i)
    for (const IntervalReport& r : reports[i].reports())
      wdp.candidates[i].push_back({r.bundle, prices.of_bundle(r.bundle)});
  WdpResult best = solve_wdp(wdp);
  double own_revenue = 0.0;
  for (std::size_t i = 0; i < alloc.bidder_count(); ++i)
    own_revenue += prices.of_bundle(alloc.of(i));
  return own_revenue >= best.total_weight - kValueTol;
}

}  // namespace imlca
