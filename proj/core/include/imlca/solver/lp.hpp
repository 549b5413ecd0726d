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

#include <vector>

#include "imlca/numeric.hpp"

namespace imlca {

enum class Sense { kMinimize, kMaximize };
enum class Cmp { kLe, kGe, kEq };

struct LinearConstraint {
  std::vector<double> coeffs;
  Cmp cmp = Cmp::kLe;
  double rhs = 0.0;
};

// Dense LP in natural form. Default variable domain is [0, +inf); bounds
// vectors, when non-empty, must have one entry per variable.
struct LpProblem {
  Sense sense = Sense::kMaximize;
  std::vector<double> objective;
  std::vector<LinearConstraint> constraints;
  std::vector<double> lower;  // -kInf allowed
  std::vector<double> upper;  // +kInf allowed

  std::size_t num_vars() const { return objective.size(); }
  double lower_of(std::size_t i) const { return lower.empty() ? 0.0 : lower[i]; }
  double upper_of(std::size_t i) const { return upper.empty() ? kInf : upper[i]; }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
};

// Two-phase dense simplex with Bland's rule: deterministic, cycle-free.
// Optimal solutions satisfy every constraint to within 1e-7.
LpResult solve_lp(const LpProblem& problem);

}  // namespace imlca
