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

#include "imlca/solver/qp.hpp"

#include <cmath>

#include "imlca/errors.hpp"

namespace imlca {
namespace {

constexpr double kStepTol = 1e-11;
constexpr double kMultTol = 1e-8;

// Internal form: equality rows always active, inequality rows a'x >= b.
struct Canonical {
  Eigen::MatrixXd a_eq;
  Eigen::VectorXd b_eq;
  Eigen::MatrixXd a_ge;
  Eigen::VectorXd b_ge;
};

Canonical canonicalize(const QpProblem& p) {
  const std::size_t n = p.num_vars();
  std::vector<std::vector<double>> ge_rows;
  std::vector<double> ge_rhs;
  std::vector<std::vector<double>> eq_rows;
  std::vector<double> eq_rhs;

  for (const auto& c : p.constraints) {
    if (c.coeffs.size() != n) throw SolverError("constraint arity mismatch");
    switch (c.cmp) {
      case Cmp::kGe:
        ge_rows.push_back(c.coeffs);
        ge_rhs.push_back(c.rhs);
        break;
      case Cmp::kLe: {
        std::vector<double> neg(c.coeffs);
        for (double& v : neg) v = -v;
        ge_rows.push_back(std::move(neg));
        ge_rhs.push_back(-c.rhs);
        break;
      }
      case Cmp::kEq:
        eq_rows.push_back(c.coeffs);
        eq_rhs.push_back(c.rhs);
        break;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isfinite(p.lower_of(i))) {
      std::vector<double> row(n, 0.0);
      row[i] = 1.0;
      ge_rows.push_back(std::move(row));
      ge_rhs.push_back(p.lower_of(i));
    }
    if (std::isfinite(p.upper_of(i))) {
      std::vector<double> row(n, 0.0);
      row[i] = -1.0;
      ge_rows.push_back(std::move(row));
      ge_rhs.push_back(-p.upper_of(i));
    }
  }

  Canonical c;
  c.a_eq.setZero(eq_rows.size(), n);
  c.b_eq.setZero(eq_rows.size());
  for (std::size_t r = 0; r < eq_rows.size(); ++r) {
    for (std::size_t j = 0; j < n; ++j) c.a_eq(r, j) = eq_rows[r][j];
    c.b_eq(r) = eq_rhs[r];
  }
  c.a_ge.setZero(ge_rows.size(), n);
  c.b_ge.setZero(ge_rows.size());
  for (std::size_t r = 0; r < ge_rows.size(); ++r) {
    for (std::size_t j = 0; j < n; ++j) c.a_ge(r, j) = ge_rows[r][j];
    c.b_ge(r) = ge_rhs[r];
  }
  return c;
}

std::optional<Eigen::VectorXd> phase1_point(const QpProblem& p) {
  LpProblem lp;
  lp.sense = Sense::kMinimize;
  lp.objective.assign(p.num_vars(), 0.0);
  lp.constraints = p.constraints;
  lp.lower = p.lower;
  lp.upper = p.upper;
  if (lp.lower.empty()) lp.lower.assign(p.num_vars(), 0.0);
  if (lp.upper.empty()) lp.upper.assign(p.num_vars(), kInf);
  LpResult r = solve_lp(lp);
  if (r.status != LpStatus::kOptimal) return std::nullopt;
  return Eigen::Map<Eigen::VectorXd>(r.x.data(), r.x.size());
}

}  // namespace

QpResult solve_qp(const QpProblem& problem,
                  std::optional<Eigen::VectorXd> start) {
  const int n = static_cast<int>(problem.num_vars());
  if (problem.quadratic.rows() != n || problem.quadratic.cols() != n)
    throw SolverError("quadratic term has wrong shape");

  Canonical c = canonicalize(problem);
  const int n_eq = static_cast<int>(c.a_eq.rows());
  const int n_ge = static_cast<int>(c.a_ge.rows());

  Eigen::VectorXd x;
  if (start) {
    x = *start;
  } else {
    auto p1 = phase1_point(problem);
    if (!p1) return {QpStatus::kInfeasible, {}, 0.0};
    x = *p1;
  }

  const double scale =
      std::max({1.0, c.b_ge.size() ? c.b_ge.cwiseAbs().maxCoeff() : 0.0,
                c.b_eq.size() ? c.b_eq.cwiseAbs().maxCoeff() : 0.0,
                x.size() ? x.cwiseAbs().maxCoeff() : 0.0});
  // Tolerate slight infeasibility from upstream stages.
  for (int r = 0; r < n_eq; ++r)
    if (std::fabs(c.a_eq.row(r).dot(x) - c.b_eq(r)) > 1e-5 * scale)
      throw SolverError("qp start violates an equality constraint");
  for (int r = 0; r < n_ge; ++r)
    if (c.a_ge.row(r).dot(x) < c.b_ge(r) - 1e-5 * scale)
      throw SolverError("qp start violates an inequality constraint");

  std::vector<bool> active(n_ge, false);

  const Eigen::MatrixXd& h = problem.quadratic;
  const Eigen::VectorXd& g = problem.linear;

  const int max_iter = 100 + 30 * (n + n_eq + n_ge);
  for (int iter = 0; iter < max_iter; ++iter) {
    // Working matrix: equalities plus active inequalities.
    std::vector<int> work;
    for (int r = 0; r < n_ge; ++r)
      if (active[r]) work.push_back(r);
    const int n_w = n_eq + static_cast<int>(work.size());
    Eigen::MatrixXd a_w(n_w, n);
    for (int r = 0; r < n_eq; ++r) a_w.row(r) = c.a_eq.row(r);
    for (std::size_t k = 0; k < work.size(); ++k)
      a_w.row(n_eq + static_cast<int>(k)) = c.a_ge.row(work[k]);

    Eigen::VectorXd grad = h * x + g;

    // Null-space basis of the working set.
    Eigen::MatrixXd z;
    if (n_w == 0) {
      z = Eigen::MatrixXd::Identity(n, n);
    } else {
      Eigen::FullPivLU<Eigen::MatrixXd> lu(a_w);
      lu.setThreshold(1e-10);
      z = lu.kernel();
      if (lu.rank() == n || z.cols() == 0) z.resize(n, 0);
    }

    Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
    bool zero_curvature_ray = false;
    Eigen::VectorXd ray;

    if (z.cols() > 0) {
      const Eigen::MatrixXd hz = z.transpose() * h * z;
      const Eigen::VectorXd gz = z.transpose() * grad;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hz);
      const Eigen::VectorXd& lam = eig.eigenvalues();
      const Eigen::MatrixXd& v = eig.eigenvectors();
      const double lam_max = lam.size() ? std::max(0.0, lam.maxCoeff()) : 0.0;
      const double lam_tol = 1e-9 * std::max(1.0, lam_max);
      const double grad_tol =
          1e-9 * std::max(1.0, gz.size() ? gz.cwiseAbs().maxCoeff() : 0.0);

      const Eigen::VectorXd coef = v.transpose() * gz;
      // A descent direction of zero curvature means the objective is linear
      // and decreasing along it; follow the ray to the first blocking row.
      for (int j = 0; j < lam.size(); ++j) {
        if (lam(j) <= lam_tol && std::fabs(coef(j)) > grad_tol) {
          Eigen::VectorXd dz = v.col(j);
          if (coef(j) > 0) dz = -dz;
          ray = z * dz;
          zero_curvature_ray = true;
          break;
        }
      }
      if (!zero_curvature_ray) {
        Eigen::VectorXd pz = Eigen::VectorXd::Zero(lam.size());
        for (int j = 0; j < lam.size(); ++j)
          if (lam(j) > lam_tol) pz -= (coef(j) / lam(j)) * v.col(j);
        p = z * pz;
      }
    }

    if (zero_curvature_ray) {
      double alpha = kInf;
      int blocker = -1;
      for (int r = 0; r < n_ge; ++r) {
        if (active[r]) continue;
        const double dir = c.a_ge.row(r).dot(ray);
        if (dir < -1e-12) {
          const double room = c.a_ge.row(r).dot(x) - c.b_ge(r);
          const double a_r = std::max(0.0, room) / (-dir);
          if (a_r < alpha - 1e-12) {
            alpha = a_r;
            blocker = r;
          }
        }
      }
      if (blocker < 0)
        throw SolverError("qp objective unbounded along a flat direction");
      x += alpha * ray;
      active[blocker] = true;
      continue;
    }

    const double step_norm = p.size() ? p.cwiseAbs().maxCoeff() : 0.0;
    if (step_norm <= kStepTol * std::max(1.0, scale)) {
      // Stationary on the working set: check multipliers.
      if (n_w == 0) {
        QpResult res;
        res.status = QpStatus::kOptimal;
        res.x = x;
        res.objective = 0.5 * x.dot(h * x) + g.dot(x);
        return res;
      }
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(
          a_w.transpose());
      Eigen::VectorXd lambda = cod.solve(grad);
      int drop = -1;
      double most_negative = -kMultTol * std::max(1.0, grad.cwiseAbs().maxCoeff());
      for (std::size_t k = 0; k < work.size(); ++k) {
        const double l = lambda(n_eq + static_cast<int>(k));
        if (l < most_negative) {
          most_negative = l;
          drop = work[k];
        }
      }
      if (drop < 0) {
        QpResult res;
        res.status = QpStatus::kOptimal;
        res.x = x;
        res.objective = 0.5 * x.dot(h * x) + g.dot(x);
        return res;
      }
      active[drop] = false;
      continue;
    }

    // Line search toward the subproblem minimizer.
    double alpha = 1.0;
    int blocker = -1;
    for (int r = 0; r < n_ge; ++r) {
      if (active[r]) continue;
      const double dir = c.a_ge.row(r).dot(p);
      if (dir < -1e-12) {
        const double room = c.a_ge.row(r).dot(x) - c.b_ge(r);
        const double a_r = std::max(0.0, room) / (-dir);
        if (a_r < alpha - 1e-12) {
          alpha = a_r;
          blocker = r;
        }
      }
    }
    x += alpha * p;
    if (blocker >= 0) active[blocker] = true;
  }

  QpResult res;
  res.status = QpStatus::kIterationLimit;
  res.x = x;
  res.objective = 0.5 * x.dot(problem.quadratic * x) + problem.linear.dot(x);
  return res;
}

}  // namespace imlca
