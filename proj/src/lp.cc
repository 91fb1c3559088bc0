// Copyright 2026 The ucore Authors
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

#include "ucore/lp.h"

#include <stdexcept>

namespace ucore {

CoverLpSolution SolveCoverLp(std::span<const mpq_class> costs,
                             const std::vector<std::vector<int>>& rows) {
  const int nc = static_cast<int>(costs.size());
  const int nr = static_cast<int>(rows.size());
  for (const mpq_class& c : costs) {
    if (sgn(c) < 0) throw std::invalid_argument("negative cost");
  }
  for (const std::vector<int>& row : rows) {
    if (row.empty()) throw std::invalid_argument("empty row");
    for (int j : row) {
      if (j < 0 || j >= nc) throw std::invalid_argument("column out of range");
    }
  }

  // Dual variables: pi_0..pi_{nr-1}, then slacks s_0..s_{nc-1}. One tableau
  // row per column j of the covering LP.
  const int width = nr + nc;
  std::vector<std::vector<mpq_class>> t(nc, std::vector<mpq_class>(width));
  std::vector<mpq_class> rhs(costs.begin(), costs.end());
  std::vector<int> basic(nc);
  for (int r = 0; r < nr; ++r) {
    for (int j : rows[r]) t[j][r] += 1;
  }
  for (int j = 0; j < nc; ++j) {
    t[j][nr + j] = 1;
    basic[j] = nr + j;
  }
  std::vector<mpq_class> obj(width);
  for (int r = 0; r < nr; ++r) obj[r] = -1;
  mpq_class value = 0;

  CoverLpSolution sol;
  while (true) {
    int enter = -1;
    for (int k = 0; k < width; ++k) {
      if (sgn(obj[k]) < 0) {
        enter = k;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    mpq_class best;
    for (int i = 0; i < nc; ++i) {
      if (sgn(t[i][enter]) <= 0) continue;
      mpq_class ratio = rhs[i] / t[i][enter];
      if (leave < 0 || ratio < best ||
          (ratio == best && basic[i] < basic[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) throw std::logic_error("covering LP dual unbounded");
    ++sol.pivots;
    const mpq_class pivot = t[leave][enter];
    for (int k = 0; k < width; ++k) t[leave][k] /= pivot;
    rhs[leave] /= pivot;
    for (int i = 0; i < nc; ++i) {
      if (i == leave || sgn(t[i][enter]) == 0) continue;
      const mpq_class f = t[i][enter];
      for (int k = 0; k < width; ++k) {
        if (sgn(t[leave][k]) != 0) t[i][k] -= f * t[leave][k];
      }
      rhs[i] -= f * rhs[leave];
    }
    const mpq_class f = obj[enter];
    for (int k = 0; k < width; ++k) {
      if (sgn(t[leave][k]) != 0) obj[k] -= f * t[leave][k];
    }
    value -= f * rhs[leave];
    basic[leave] = enter;
  }

  sol.value = value;
  sol.duals.assign(nr, 0);
  sol.reduced.assign(nc, 0);
  sol.primal.assign(nc, 0);
  for (int i = 0; i < nc; ++i) {
    if (basic[i] < nr) {
      sol.duals[basic[i]] = rhs[i];
    } else {
      sol.reduced[basic[i] - nr] = rhs[i];
    }
  }
  for (int j = 0; j < nc; ++j) sol.primal[j] = obj[nr + j];
  return sol;
}

}  // namespace ucore
