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

#include "imlca/solver/lp.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "imlca/errors.hpp"

namespace imlca {
namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kPhase1Tol = 1e-7;

// Column description after conversion to standard form: every structural
// variable is expressed through nonnegative tableau columns.
struct VarMap {
  // x_i = shift + y[pos] (- y[neg] when neg >= 0, for free variables).
  double shift = 0.0;
  int pos = -1;
  int neg = -1;
};

struct Standard {
  Eigen::MatrixXd a;  // rows x cols, all y >= 0, a*y (cmp) b with b >= 0
  Eigen::VectorXd b;
  std::vector<Cmp> cmp;
  Eigen::VectorXd c;  // minimize c*y
  std::vector<VarMap> map;
  double obj_shift = 0.0;
};

Standard to_standard(const LpProblem& p) {
  const std::size_t n = p.num_vars();
  Standard s;
  s.map.resize(n);

  // Assign tableau columns.
  int cols = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = p.lower_of(i);
    if (std::isfinite(lo)) {
      s.map[i].shift = lo;
      s.map[i].pos = cols++;
    } else {
      s.map[i].pos = cols++;
      s.map[i].neg = cols++;
    }
  }

  std::vector<LinearConstraint> rows = p.constraints;
  // Finite upper bounds become rows in x-space.
  for (std::size_t i = 0; i < n; ++i) {
    const double up = p.upper_of(i);
    if (std::isfinite(up)) {
      LinearConstraint r;
      r.coeffs.assign(n, 0.0);
      r.coeffs[i] = 1.0;
      r.cmp = Cmp::kLe;
      r.rhs = up;
      rows.push_back(std::move(r));
    }
    const double lo = p.lower_of(i);
    if (std::isfinite(lo) && std::isfinite(p.upper_of(i)) &&
        lo > p.upper_of(i))
      rows.push_back({std::vector<double>(n, 0.0), Cmp::kLe, -1.0});  // infeasible marker
  }

  const std::size_t m = rows.size();
  s.a.setZero(m, cols);
  s.b.setZero(m);
  s.cmp.resize(m);
  for (std::size_t r = 0; r < m; ++r) {
    if (rows[r].coeffs.size() != n)
      throw SolverError("constraint arity mismatch");
    double rhs = rows[r].rhs;
    for (std::size_t i = 0; i < n; ++i) {
      const double aij = rows[r].coeffs[i];
      if (aij == 0.0) continue;
      rhs -= aij * s.map[i].shift;
      s.a(r, s.map[i].pos) += aij;
      if (s.map[i].neg >= 0) s.a(r, s.map[i].neg) -= aij;
    }
    s.b(r) = rhs;
    s.cmp[r] = rows[r].cmp;
    if (s.b(r) < 0.0) {
      s.a.row(r) *= -1.0;
      s.b(r) *= -1.0;
      if (s.cmp[r] == Cmp::kLe)
        s.cmp[r] = Cmp::kGe;
      else if (s.cmp[r] == Cmp::kGe)
        s.cmp[r] = Cmp::kLe;
    }
  }

  s.c.setZero(cols);
  const double sign = p.sense == Sense::kMaximize ? -1.0 : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ci = sign * p.objective[i];
    s.obj_shift += p.objective[i] * s.map[i].shift;
    s.c(s.map[i].pos) += ci;
    if (s.map[i].neg >= 0) s.c(s.map[i].neg) -= ci;
  }
  return s;
}

// Tableau simplex on: min c*y, A y = b, y >= 0, with basis tracking.
class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& a, const Eigen::VectorXd& b)
      : a_(a), b_(b), basis_(a.rows(), -1) {}

  Eigen::MatrixXd a_;
  Eigen::VectorXd b_;
  std::vector<int> basis_;

  // Bland's rule: entering = lowest-index negative reduced cost; leaving =
  // min ratio, ties by lowest basis variable index. Returns false when
  // unbounded.
  bool run(const Eigen::VectorXd& c, double* objective) {
    const int m = static_cast<int>(a_.rows());
    const int n = static_cast<int>(a_.cols());
    Eigen::VectorXd reduced(n);
    for (;;) {
      // Reduced costs from the current basis (explicit dual recomputation
      // keeps drift bounded on long runs).
      Eigen::VectorXd cb(m);
      for (int r = 0; r < m; ++r) cb(r) = c(basis_[r]);
      reduced = c - a_.transpose() * cb;

      int enter = -1;
      for (int j = 0; j < n; ++j) {
        if (reduced(j) < -kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) break;

      int leave = -1;
      double best_ratio = 0.0;
      for (int r = 0; r < m; ++r) {
        if (a_(r, enter) > kPivotTol) {
          const double ratio = b_(r) / a_(r, enter);
          if (leave < 0 || ratio < best_ratio - kPivotTol ||
              (std::fabs(ratio - best_ratio) <= kPivotTol &&
               basis_[r] < basis_[leave])) {
            leave = r;
            best_ratio = ratio;
          }
        }
      }
      if (leave < 0) return false;  // unbounded
      pivot(leave, enter);
    }
    double obj = 0.0;
    for (int r = 0; r < m; ++r) obj += c(basis_[r]) * b_(r);
    *objective = obj;
    return true;
  }

  void pivot(int row, int col) {
    const double piv = a_(row, col);
    a_.row(row) /= piv;
    b_(row) /= piv;
    for (int r = 0; r < a_.rows(); ++r) {
      if (r == row) continue;
      const double f = a_(r, col);
      if (f == 0.0) continue;
      a_.row(r) -= f * a_.row(row);
      b_(r) -= f * b_(row);
      if (b_(r) < 0.0 && b_(r) > -1e-11) b_(r) = 0.0;
    }
    basis_[row] = col;
  }
};

}  // namespace

LpResult solve_lp(const LpProblem& problem) {
  Standard s = to_standard(problem);
  const int m = static_cast<int>(s.a.rows());
  const int structural = static_cast<int>(s.a.cols());

  // Count extra columns: slack/surplus plus artificials.
  int slack_cols = 0;
  for (Cmp c : s.cmp)
    if (c != Cmp::kEq) ++slack_cols;
  int artificial_cols = 0;
  for (Cmp c : s.cmp)
    if (c != Cmp::kLe) ++artificial_cols;

  const int total = structural + slack_cols + artificial_cols;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, total);
  a.leftCols(structural) = s.a;

  Tableau t(a, s.b);
  int next_slack = structural;
  int next_art = structural + slack_cols;
  std::vector<int> artificials;
  for (int r = 0; r < m; ++r) {
    switch (s.cmp[r]) {
      case Cmp::kLe:
        t.a_(r, next_slack) = 1.0;
        t.basis_[r] = next_slack++;
        break;
      case Cmp::kGe:
        t.a_(r, next_slack++) = -1.0;
        t.a_(r, next_art) = 1.0;
        t.basis_[r] = next_art;
        artificials.push_back(next_art++);
        break;
      case Cmp::kEq:
        t.a_(r, next_art) = 1.0;
        t.basis_[r] = next_art;
        artificials.push_back(next_art++);
        break;
    }
  }

  if (!artificials.empty()) {
    Eigen::VectorXd c1 = Eigen::VectorXd::Zero(total);
    for (int j : artificials) c1(j) = 1.0;
    double phase1 = 0.0;
    if (!t.run(c1, &phase1)) throw SolverError("phase-1 simplex unbounded");
    if (phase1 > kPhase1Tol) return {LpStatus::kInfeasible, {}, 0.0};
    // Pivot lingering artificials out of the basis where possible.
    for (int r = 0; r < m; ++r) {
      if (t.basis_[r] < structural + slack_cols) continue;
      int col = -1;
      for (int j = 0; j < structural + slack_cols; ++j) {
        if (std::fabs(t.a_(r, j)) > 1e-8) {
          col = j;
          break;
        }
      }
      if (col >= 0) t.pivot(r, col);
      // else: redundant row, harmless to leave the artificial basic at 0.
    }
  }

  // Phase 2 with artificial columns blocked.
  Eigen::VectorXd c2 = Eigen::VectorXd::Zero(total);
  c2.head(structural) = s.c;
  for (int j : artificials) t.a_.col(j).setZero();
  double phase2 = 0.0;
  if (!t.run(c2, &phase2)) return {LpStatus::kUnbounded, {}, 0.0};

  Eigen::VectorXd y = Eigen::VectorXd::Zero(total);
  for (int r = 0; r < m; ++r) y(t.basis_[r]) = t.b_(r);

  LpResult result;
  result.status = LpStatus::kOptimal;
  result.x.resize(problem.num_vars());
  for (std::size_t i = 0; i < problem.num_vars(); ++i) {
    const VarMap& vm = s.map[i];
    double v = vm.shift + y(vm.pos);
    if (vm.neg >= 0) v -= y(vm.neg);
    result.x[i] = v;
  }
  const double sign = problem.sense == Sense::kMaximize ? -1.0 : 1.0;
  result.objective = sign * phase2 + s.obj_shift;
  return result;
}

}  // namespace imlca
