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

#include <cmath>
#include <limits>

namespace imlca {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// All currency amounts are doubles compared at these absolute tolerances.
// kValueTol is the general comparison tolerance; kStrictTol is the margin a
// strict utility inequality must clear; kSolverTol is the residual level the
// embedded solvers are expected to reach.
inline constexpr double kValueTol = 1e-6;
inline constexpr double kStrictTol = 1e-6;
inline constexpr double kSolverTol = 1e-7;
inline constexpr double kTieTol = 1e-9;

inline bool value_eq(double a, double b, double tol = kValueTol) {
  return std::fabs(a - b) <= tol;
}
inline bool value_ge(double a, double b, double tol = kValueTol) {
  return a >= b - tol;
}
inline bool value_le(double a, double b, double tol = kValueTol) {
  return a <= b + tol;
}
// Strict comparison: true only when a exceeds b by more than the margin.
inline bool value_gt(double a, double b, double margin = kStrictTol) {
  return a > b + margin;
}

}  // namespace imlca
