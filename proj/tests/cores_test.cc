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

#include "ucore/cores.h"

#include <gtest/gtest.h>

#include <random>
#include <set>

namespace ucore {
namespace {

auto AllFree() {
  return [](int) { return true; };
}

TEST(CoreRegistry, RegisterUpdatesCountsAndStacks) {
  CoreRegistry r(4, SearchMode::kNested);
  const int id = r.Register({}, {2, 3}, 0, CoreSource::kConflict);
  EXPECT_EQ(r.count(2), 1);
  EXPECT_EQ(r.count(3), 1);
  EXPECT_EQ(r.count(0), 0);
  EXPECT_EQ(r.stack(3), (std::vector<int>{id}));
  EXPECT_EQ(r.Candidates(0, AllFree()), (std::vector<int>{0, 1}));
  EXPECT_TRUE(r.CountsConsistent());
}

TEST(CoreRegistry, CandidatesAfterRootCore) {
  // Objectives a, b, c with the root core {a, b, c}.
  CoreRegistry r(3, SearchMode::kNested);
  r.Register({}, {0, 1, 2}, 0, CoreSource::kConflict);
  EXPECT_TRUE(r.Candidates(0, AllFree()).empty());
  r.OnObjectiveTrue(0, 1);
  EXPECT_EQ(r.num_active(), 0);
  auto free = [](int i) { return i != 0; };
  EXPECT_EQ(r.Candidates(1, free), (std::vector<int>{1, 2}));
  r.BackjumpTo(0);
  EXPECT_EQ(r.num_active(), 1);
  EXPECT_TRUE(r.Candidates(0, AllFree()).empty());
}

TEST(CoreRegistry, AlreadyTrueMemberMakesRecordInactive) {
  CoreRegistry r(3, SearchMode::kNested);
  r.Register({}, {0, 1}, 0, CoreSource::kConflict,
             [](int i) { return i == 1; });
  EXPECT_FALSE(r.record(0).active);
  EXPECT_EQ(r.count(0), 0);
  EXPECT_TRUE(r.CountsConsistent());
}

TEST(CoreRegistry, DuplicateCoresEachCount) {
  CoreRegistry r(2, SearchMode::kNested);
  r.Register({}, {0, 1}, 0, CoreSource::kConflict);
  r.Register({}, {0, 1}, 1, CoreSource::kConflict);
  EXPECT_EQ(r.count(0), 2);
  r.OnObjectiveTrue(0, 2);
  EXPECT_EQ(r.count(1), 0);
  EXPECT_EQ(r.deactivations(), 2);
  r.BackjumpTo(1);
  EXPECT_EQ(r.count(1), 2);
  r.BackjumpTo(0);
  EXPECT_EQ(r.num_records(), 1);
  EXPECT_EQ(r.count(1), 1);
  EXPECT_TRUE(r.CountsConsistent());
}

TEST(CoreRegistry, BasicModeCandidatesOnlyAtRoot) {
  CoreRegistry r(4, SearchMode::kBasic);
  EXPECT_EQ(r.Candidates(0, AllFree()), (std::vector<int>{0, 1, 2, 3}));
  r.Register({}, {1, 3}, 0, CoreSource::kConflict);
  EXPECT_FALSE(r.in_f(1));
  EXPECT_EQ(r.Candidates(0, AllFree()), (std::vector<int>{0, 2}));
  EXPECT_TRUE(r.Candidates(1, AllFree()).empty());
}

TEST(CoreRegistry, BranchAndBoundHasNoCandidates) {
  CoreRegistry r(3, SearchMode::kBranchAndBound);
  EXPECT_TRUE(r.Candidates(0, AllFree()).empty());
}

class Log : public CoreListener {
 public:
  void OnCoreAdded(int id) override { events.push_back({'+', id}); }
  void OnCoreRemoved(int id) override { events.push_back({'-', id}); }
  void OnCoreDeactivated(int id) override { events.push_back({'d', id}); }
  void OnCoreReactivated(int id) override { events.push_back({'r', id}); }
  std::vector<std::pair<char, int>> events;
};

TEST(CoreRegistry, ListenersSeeEventsInOrder) {
  CoreRegistry r(3, SearchMode::kNested);
  Log log;
  r.AddListener(&log);
  r.Register({}, {0, 1}, 1, CoreSource::kConflict);
  r.OnObjectiveTrue(1, 2);
  r.BackjumpTo(0);
  EXPECT_EQ(log.events, (std::vector<std::pair<char, int>>{
                            {'+', 0}, {'d', 0}, {'r', 0}, {'-', 0}}));
}

TEST(CoreRegistry, RandomSequencesKeepCountsConsistent) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    const int n = 1 + static_cast<int>(rng() % 8);
    CoreRegistry r(n, SearchMode::kNested);
    std::set<int> truths;
    std::vector<std::set<int>> true_at_level(1);
    int level = 0;
    for (int step = 0; step < 40; ++step) {
      const int op = static_cast<int>(rng() % 4);
      if (op == 0) {
        ++level;
        true_at_level.emplace_back();
      } else if (op == 1 && level > 0) {
        const int to = static_cast<int>(rng() % level);
        r.BackjumpTo(to);
        while (level > to) {
          for (int i : true_at_level.back()) truths.erase(i);
          true_at_level.pop_back();
          --level;
        }
      } else if (op == 2) {
        std::vector<int> members;
        for (int i = 0; i < n; ++i) {
          if (rng() % 2) members.push_back(i);
        }
        if (members.empty()) continue;
        r.Register({}, members, level, CoreSource::kConflict,
                   [&](int i) { return truths.count(i) > 0; });
      } else {
        const int i = static_cast<int>(rng() % n);
        if (truths.count(i)) continue;
        truths.insert(i);
        true_at_level.back().insert(i);
        r.OnObjectiveTrue(i, level);
      }
      ASSERT_TRUE(r.CountsConsistent());
      for (int id = 0; id < r.num_records(); ++id) {
        bool any_true = false;
        for (int m : r.record(id).members) any_true |= truths.count(m) > 0;
        ASSERT_EQ(r.record(id).active, !any_true);
      }
    }
  }
}

}  // namespace
}  // namespace ucore
