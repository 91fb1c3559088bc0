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

#include "ucore/conflict.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "ucore/domains.h"
#include "ucore/propagation.h"

namespace ucore {
namespace {

constexpr Reason kDecision{ReasonKind::kDecision, 0, 0};
constexpr Reason kMultiple{ReasonKind::kMultipleDecision, 0, 0};

std::vector<Lit> Sorted(std::vector<Lit> v) {
  std::sort(v.begin(), v.end());
  return v;
}

class ConflictFixture : public ::testing::Test {
 protected:
  ConflictFixture() : engine(&s), analyzer(&engine) {}
  Lit NewBool() { return s.Ge(s.NewBoolVar(), 1); }
  std::vector<Lit> NewBools(int n) {
    std::vector<Lit> out;
    for (int i = 0; i < n; ++i) out.push_back(NewBool());
    return out;
  }
  void MultipleDecision(const std::vector<Lit>& lits) {
    s.PushLevel();
    for (Lit l : lits) s.Assign(l, kMultiple);
  }
  void Decide(Lit l) {
    s.PushLevel();
    s.Assign(l, kDecision);
  }

  DomainStore s;
  PropagationEngine engine;
  ConflictAnalyzer analyzer;
  std::vector<Lit> conflict;
};

TEST_F(ConflictFixture, TwoVariableInstanceGivesPureCore) {
  const Lit a = NewBool(), b = NewBool();
  const std::vector<Lit> y = NewBools(4);
  engine.AddClause({y[0], ~b});
  engine.AddClause({y[1], a, b});
  engine.AddClause({y[2], ~a});
  engine.AddClause({y[3], a});
  ASSERT_TRUE(engine.Propagate(&conflict));
  MultipleDecision({~y[0], ~y[1], ~y[2], ~y[3]});
  ASSERT_FALSE(engine.Propagate(&conflict));
  const GeneralizedNogood g = analyzer.Analyze(conflict);
  EXPECT_TRUE(g.premises.empty());
  EXPECT_EQ(Sorted(g.conclusions), Sorted({y[2], y[3]}));
  EXPECT_EQ(g.conflict_level, 1);
  EXPECT_EQ(analyzer.BackjumpLevel(g), 0);
}

TEST_F(ConflictFixture, DisjointInstanceGivesThreeMemberCore) {
  const Lit a = NewBool(), b = NewBool(), c = NewBool();
  const std::vector<Lit> y = NewBools(4);
  engine.AddClause({y[0], ~a});
  engine.AddClause({y[1], ~b});
  engine.AddClause({y[2], a, b});
  engine.AddClause({y[3], ~c});
  ASSERT_TRUE(engine.Propagate(&conflict));
  MultipleDecision({~y[0], ~y[1], ~y[2], ~y[3]});
  ASSERT_FALSE(engine.Propagate(&conflict));
  const GeneralizedNogood g = analyzer.Analyze(conflict);
  EXPECT_TRUE(g.premises.empty());
  EXPECT_EQ(Sorted(g.conclusions), Sorted({y[0], y[1], y[2]}));
}

TEST_F(ConflictFixture, ContingentCoreIsPremisedOnD) {
  const Lit a = NewBool(), b = NewBool(), c = NewBool(), d = NewBool();
  engine.AddClause({a, b, d});
  engine.AddClause({b, c, ~d});
  engine.AddClause({~a, d});
  ASSERT_TRUE(engine.Propagate(&conflict));
  Decide(a);
  ASSERT_TRUE(engine.Propagate(&conflict));
  ASSERT_TRUE(s.IsTrue(d));
  MultipleDecision({~b, ~c});
  ASSERT_FALSE(engine.Propagate(&conflict));
  const GeneralizedNogood g = analyzer.Analyze(conflict);
  EXPECT_EQ(g.premises, (std::vector<Lit>{d}));
  EXPECT_EQ(Sorted(g.conclusions), Sorted({b, c}));
  EXPECT_EQ(g.conflict_level, 2);
  EXPECT_EQ(analyzer.BackjumpLevel(g), 1);
}

TEST_F(ConflictFixture, SingleDecisionGivesUniqueImplicationPoint) {
  const std::vector<Lit> x = NewBools(4);
  engine.AddClause({~x[0], x[1]});
  engine.AddClause({~x[1], ~x[2], x[3]});
  engine.AddClause({~x[1], ~x[2], ~x[3]});
  ASSERT_TRUE(engine.Propagate(&conflict));
  Decide(x[2]);
  ASSERT_TRUE(engine.Propagate(&conflict));
  Decide(x[0]);
  ASSERT_FALSE(engine.Propagate(&conflict));
  GeneralizedNogood g = analyzer.Analyze(conflict);
  ASSERT_EQ(g.conclusions.size(), 1u);
  EXPECT_EQ(g.conclusions[0], ~x[1]);
  EXPECT_EQ(g.premises, (std::vector<Lit>{x[2]}));
  EXPECT_EQ(analyzer.BackjumpLevel(g), 1);

  analyzer.Minimize(&g);
  s.Backjump(analyzer.BackjumpLevel(g));
  engine.OnBackjump(analyzer.BackjumpLevel(g));
  const int before = engine.num_clauses();
  analyzer.Learn(g, SearchMode::kNested, [](const GeneralizedNogood&) {
    FAIL() << "a 1UIP nogood is never a core";
  });
  EXPECT_EQ(engine.num_clauses(), before + 1);
  ASSERT_TRUE(engine.Propagate(&conflict));
  EXPECT_TRUE(s.IsFalse(x[1]));
  EXPECT_TRUE(s.IsFalse(x[0]));
}

TEST_F(ConflictFixture, MinimizeDropsImpliedPremise) {
  const std::vector<Lit> x = NewBools(5);
  engine.AddClause({~x[0], x[1]});
  engine.AddClause({~x[0], ~x[1], ~x[3], x[4]});
  engine.AddClause({~x[0], ~x[1], ~x[3], ~x[4]});
  ASSERT_TRUE(engine.Propagate(&conflict));
  Decide(x[0]);
  ASSERT_TRUE(engine.Propagate(&conflict));
  Decide(x[2]);
  Decide(x[3]);
  ASSERT_FALSE(engine.Propagate(&conflict));
  GeneralizedNogood g = analyzer.Analyze(conflict);
  ASSERT_EQ(g.conclusions, (std::vector<Lit>{~x[3]}));
  EXPECT_EQ(Sorted(g.premises), Sorted({x[0], x[1]}));
  analyzer.Minimize(&g);
  EXPECT_EQ(g.premises, (std::vector<Lit>{x[0]}));
  EXPECT_EQ(analyzer.BackjumpLevel(g), 1);
}

TEST_F(ConflictFixture, GeneralizedNogoodIsRegisteredInBasicMode) {
  const Lit a = NewBool();
  const std::vector<Lit> y = NewBools(2);
  engine.AddClause({y[0], ~a});
  engine.AddClause({y[1], a});
  ASSERT_TRUE(engine.Propagate(&conflict));
  MultipleDecision({~y[0], ~y[1]});
  ASSERT_FALSE(engine.Propagate(&conflict));
  const GeneralizedNogood g = analyzer.Analyze(conflict);
  s.Backjump(0);
  engine.OnBackjump(0);
  const int before = engine.num_clauses();
  int registered = 0;
  analyzer.Learn(g, SearchMode::kBasic, [&](const GeneralizedNogood& core) {
    ++registered;
    EXPECT_EQ(Sorted(core.conclusions), Sorted({y[0], y[1]}));
  });
  EXPECT_EQ(registered, 1);
  EXPECT_EQ(engine.num_clauses(), before);
}

TEST_F(ConflictFixture, NotifyModeLearnsSplitClause) {
  const Lit a = NewBool();
  const std::vector<Lit> y = NewBools(2);
  engine.SetObjectiveAtom(y[0].var(), 0);
  engine.SetObjectiveAtom(y[1].var(), 1);
  engine.AddClause({y[0], ~a});
  engine.AddClause({y[1], a});
  ASSERT_TRUE(engine.Propagate(&conflict));
  MultipleDecision({~y[0], ~y[1]});
  ASSERT_FALSE(engine.Propagate(&conflict));
  const GeneralizedNogood g = analyzer.Analyze(conflict);
  s.Backjump(0);
  engine.OnBackjump(0);
  const int before = engine.num_clauses();
  analyzer.Learn(g, SearchMode::kNestedNotify, [](const GeneralizedNogood&) {
    FAIL() << "notify mode learns a clause";
  });
  ASSERT_EQ(engine.num_clauses(), before + 1);
  const auto lits = engine.clause(before);
  EXPECT_EQ(Sorted({lits.begin(), lits.end()}), Sorted({y[0], y[1]}));
}

TEST_F(ConflictFixture, ExpandAuxReplacesAuxiliaryLiterals) {
  const std::vector<Lit> x = NewBools(2);
  const Lit aux(s.NewAuxVar(), true);
  engine.AddClause({~x[0], ~x[1], aux});
  ASSERT_TRUE(engine.Propagate(&conflict));
  Decide(x[0]);
  Decide(x[1]);
  ASSERT_TRUE(engine.Propagate(&conflict));
  ASSERT_TRUE(s.IsTrue(aux));
  std::vector<Lit> lits = {aux};
  analyzer.ExpandAux(&lits);
  EXPECT_EQ(Sorted(lits), Sorted({x[0], x[1]}));
}

TEST_F(ConflictFixture, AnalyzeRejectsRootNogood) {
  const Lit a = NewBool();
  engine.AddClause({a});
  ASSERT_TRUE(engine.Propagate(&conflict));
  EXPECT_THROW(analyzer.Analyze(std::vector<Lit>{a}), std::logic_error);
}

}  // namespace
}  // namespace ucore
