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

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "imlca/solver/lp.hpp"

namespace imlca {

// Convex quadratic program
//   minimize (1/2) x'Hx + g'x  subject to linear constraints and bounds.
// H must be symmetric positive-semidefinite; it does not have to be
// positive-definite.
struct QpProblem {
  Eigen::MatrixXd quadratic;  // H
  Eigen::VectorXd linear;     // g
  std::vector<LinearConstraint> constraints;
  std::vector<double> lower;  // per-variable, -kInf allowed; empty = 0
  std::vector<double> upper;  // +kInf allowed; empty = +inf

  std::size_t num_vars() const { return static_cast<std::size_t>(linear.size()); }
  double lower_of(std::size_t i) const { return lower.empty() ? 0.0 : lower[i]; }
  double upper_of(std::size_t i) const { return upper.empty() ? kInf : upper[i]; }
};

enum class QpStatus { kOptimal, kInfeasible, kIterationLimit };

struct QpResult {
  QpStatus status = QpStatus::kInfeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
};

// Primal active-set method (null-space form). Semidefinite Hessians are
// handled through an eigendecomposition of the reduced Hessian: directions of
// zero curvature are followed until a constraint blocks. Deterministic:
// lowest-index tie rules throughout. 'start' must be feasible when given;
// otherwise a phase-1 simplex run produces the initial point.
QpResult solve_qp(const QpProblem& problem,
                  std::optional<Eigen::VectorXd> start = {});

}  // namespace imlca
