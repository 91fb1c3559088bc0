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

#include <gtest/gtest.h>

#include <random>

namespace ucore {
namespace {

std::vector<mpq_class> Costs(std::initializer_list<int> c) {
  std::vector<mpq_class> out;
  for (int v : c) out.emplace_back(v);
  return out;
}

// Checks primal feasibility, dual feasibility and equal objectives, which
// together certify optimality.
void ExpectCertified(const std::vector<mpq_class>& costs,
                     const std::vector<std::vector<int>>& rows,
                     const CoverLpSolution& s) {
  ASSERT_EQ(s.primal.size(), costs.size());
  ASSERT_EQ(s.duals.size(), rows.size());
  mpq_class primal_obj = 0;
  for (size_t j = 0; j < costs.size(); ++j) {
    EXPECT_GE(s.primal[j], 0);
    primal_obj += costs[j] * s.primal[j];
  }
  for (const std::vector<int>& row : rows) {
    mpq_class lhs = 0;
    for (int j : row) lhs += s.primal[j];
    EXPECT_GE(lhs, 1);
  }
  mpq_class dual_obj = 0;
  std::vector<mpq_class> used(costs.size(), 0);
  for (size_t i = 0; i < rows.size(); ++i) {
    EXPECT_GE(s.duals[i], 0);
    dual_obj += s.duals[i];
    for (int j : rows[i]) used[j] += s.duals[i];
  }
  for (size_t j = 0; j < costs.size(); ++j) {
    EXPECT_LE(used[j], costs[j]);
    EXPECT_EQ(s.reduced[j], costs[j] - used[j]);
  }
  EXPECT_EQ(primal_obj, s.value);
  EXPECT_EQ(dual_obj, s.value);
}

TEST(CoverLp, TwoOverlappingCores) {
  const auto costs = Costs({2, 3, 3, 5});
  const std::vector<std::vector<int>> rows = {{0, 2, 3}, {1, 2, 3}};
  const CoverLpSolution s = SolveCoverLp(costs, rows);
  EXPECT_EQ(s.value, 3);
  ExpectCertified(costs, rows, s);
}

TEST(CoverLp, SingleCoreCostsItsCheapestMember) {
  const auto costs = Costs({7, 4, 9});
  const std::vector<std::vector<int>> rows = {{0, 1, 2}};
  const CoverLpSolution s = SolveCoverLp(costs, rows);
  EXPECT_EQ(s.value, 4);
  ExpectCertified(costs, rows, s);
}

TEST(CoverLp, NoRowsIsZero) {
  const auto costs = Costs({1, 2});
  const CoverLpSolution s = SolveCoverLp(costs, {});
  EXPECT_EQ(s.value, 0);
  ExpectCertified(costs, {}, s);
}

TEST(CoverLp, TriangleHasFractionalOptimum) {
  const auto costs = Costs({1, 1, 1});
  const std::vector<std::vector<int>> rows = {{0, 1}, {1, 2}, {0, 2}};
  const CoverLpSolution s = SolveCoverLp(costs, rows);
  EXPECT_EQ(s.value, mpq_class(3, 2));
  ExpectCertified(costs, rows, s);
}

TEST(CoverLp, RandomInstancesAreCertified) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 300; ++round) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const int m = static_cast<int>(rng() % 10);
    std::vector<mpq_class> costs;
    for (int j = 0; j < n; ++j)
      costs.emplace_back(1 + static_cast<int>(rng() % 9));
    std::vector<std::vector<int>> rows;
    for (int i = 0; i < m; ++i) {
      std::vector<int> row;
      for (int j = 0; j < n; ++j) {
        if (rng() % 3 == 0) row.push_back(j);
      }
      if (row.empty()) row.push_back(static_cast<int>(rng() % n));
      rows.push_back(row);
    }
    ExpectCertified(costs, rows, SolveCoverLp(costs, rows));
  }
}

}  // namespace
}  // namespace ucore
