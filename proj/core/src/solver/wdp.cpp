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

#include "imlca/solver/wdp.hpp"

#include <algorithm>

#include "imlca/errors.hpp"
#include "imlca/numeric.hpp"

namespace imlca {
namespace {

struct Search {
  const WdpProblem* p = nullptr;
  std::vector<std::vector<std::uint64_t>> masks;  // per bidder, per candidate
  std::vector<double> suffix_max;                 // best weight from bidder i on
  std::vector<std::size_t> current;
  std::vector<std::size_t> best;
  double best_value = -kInf;
  bool have_best = false;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  bool timed_out = false;
  std::uint64_t nodes = 0;

  void dfs(std::size_t bidder, std::uint64_t used, double value) {
    if (timed_out) return;
    if ((++nodes & 0x3ff) == 0 && deadline &&
        std::chrono::steady_clock::now() > *deadline) {
      timed_out = true;
      return;
    }
    if (bidder == p->candidates.size()) {
      if (!have_best || value > best_value + kTieTol) {
        best_value = value;
        best = current;
        have_best = true;
      }
      return;
    }
    if (have_best && value + suffix_max[bidder] <= best_value + kTieTol)
      return;
    const auto& cands = p->candidates[bidder];
    for (std::size_t k = 0; k < cands.size(); ++k) {
      if (masks[bidder][k] & used) continue;
      current[bidder] = k;
      dfs(bidder + 1, used | masks[bidder][k], value + cands[k].weight);
    }
  }
};

std::uint64_t item_mask(const Bundle& b) {
  std::uint64_t mask = 0;
  for (std::size_t j = 0; j < b.item_count(); ++j)
    if (b.contains(j)) mask |= std::uint64_t{1} << j;
  return mask;
}

}  // namespace

WdpResult solve_wdp(const WdpProblem& problem,
                    std::optional<std::chrono::milliseconds> time_cap) {
  const std::size_t n = problem.candidates.size();
  for (const auto& cands : problem.candidates)
    if (cands.empty())
      throw SolverError("every bidder needs at least one candidate");
  if (problem.item_count > 64)
    throw TooLargeError("winner determination limited to 64 items");

  Search s;
  s.p = &problem;
  s.masks.resize(n);
  s.suffix_max.assign(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    s.masks[i].reserve(problem.candidates[i].size());
    for (const auto& c : problem.candidates[i])
      s.masks[i].push_back(item_mask(c.bundle));
  }
  for (std::size_t i = n; i-- > 0;) {
    double mx = 0.0;
    for (const auto& c : problem.candidates[i]) mx = std::max(mx, c.weight);
    s.suffix_max[i] = s.suffix_max[i + 1] + mx;
  }
  s.current.assign(n, 0);
  if (time_cap)
    s.deadline = std::chrono::steady_clock::now() + *time_cap;

  s.dfs(0, 0, 0.0);

  WdpResult result;
  result.selection = s.best;
  result.total_weight = s.best_value;
  result.proven_optimal = !s.timed_out;
  if (!s.have_best) throw SolverError("winner determination found no solution");
  return result;
}

}  // namespace imlca
