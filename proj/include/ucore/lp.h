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

// Exact rational solver for the covering LP
//
//   min c^T y  s.t.  sum_{j in R} y_j >= 1 for every row R,  y >= 0,
//
// solved through its packing dual max 1^T pi s.t. A^T pi <= c, pi >= 0 with
// a dense tableau simplex and Bland's rule. The slack basis of the dual is
// feasible because c >= 0, so no phase one is needed.

#ifndef UCORE_LP_H_
#define UCORE_LP_H_

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <vector>

namespace ucore {

struct CoverLpSolution {
  mpq_class value;
  // One multiplier per row.
  std::vector<mpq_class> duals;
  // One value per column.
  std::vector<mpq_class> primal;
  // c_j - (A^T pi)_j per column; non-negative at the optimum.
  std::vector<mpq_class> reduced;
  int64_t pivots = 0;
};

// Rows are lists of column indices; every row must be nonempty and every
// cost non-negative. Throws std::invalid_argument otherwise.
CoverLpSolution SolveCoverLp(std::span<const mpq_class> costs,
                             const std::vector<std::vector<int>>& rows);

}  // namespace ucore

#endif  // UCORE_LP_H_
