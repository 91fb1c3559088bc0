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

#include "ucore/model.h"

#include <gtest/gtest.h>

#include <sstream>

#include "test_util.h"

namespace ucore {
namespace {

using testing::LoadData;
using testing::ReadData;

TEST(ParseWcnf, TwoVariableInstanceHasFourUnitWeightTerms) {
  const Problem p = LoadData("two_var.wcnf");
  ASSERT_EQ(p.objective.size(), 4u);
  for (const ObjectiveTerm& t : p.objective) {
    EXPECT_EQ(t.weight, 1u);
    EXPECT_TRUE(p.vars[t.var].relaxation);
  }
  EXPECT_EQ(p.soft.size(), 4u);
  EXPECT_EQ(p.TotalWeight(), 4);
}

TEST(ParseWcnf, HeaderOnlyIsVacuous) {
  const Problem p = ParseWcnf("p wcnf 3 0 10\n");
  EXPECT_TRUE(p.soft.empty());
  EXPECT_TRUE(p.objective.empty());
  const OracleResult o = BruteForceOptimum(p);
  ASSERT_EQ(o.status, OracleResult::kOptimal);
  EXPECT_EQ(o.cost, 0u);
}

TEST(ParseWcnf, RandomFixtureMatchesStoredOptimum) {
  const std::string text = ReadData("random10.wcnf");
  const size_t at = text.find("c optimum ");
  ASSERT_NE(at, std::string::npos);
  const uint64_t stored = std::stoull(text.substr(at + 10));
  const OracleResult o = BruteForceOptimum(ParseWcnf(text));
  ASSERT_EQ(o.status, OracleResult::kOptimal);
  EXPECT_EQ(o.cost, stored);
}

TEST(ParseWcnf, TopWeightClausesAreHard) {
  const Problem p = ParseWcnf("p wcnf 2 2 5\n5 1 2 0\n3 -1 0\n");
  EXPECT_EQ(p.soft.size(), 1u);
  EXPECT_EQ(p.hard.size(), 2u);
  EXPECT_EQ(p.objective[0].weight, 3u);
}

struct BadWcnf {
  const char* text;
  ParseErrorKind kind;
};

class ParseWcnfErrors : public ::testing::TestWithParam<BadWcnf> {};

TEST_P(ParseWcnfErrors, ReportsKind) {
  try {
    ParseWcnf(GetParam().text);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), GetParam().kind) << e.what();
  }
}

INSTANTIATE_TEST_SUITE_P(
    Cases, ParseWcnfErrors,
    ::testing::Values(
        BadWcnf{"1 1 0\n", ParseErrorKind::kMalformedHeader},
        BadWcnf{"p wcnf 2 1\n1 1 0\n", ParseErrorKind::kMalformedHeader},
        BadWcnf{"p wcnf 2 1 5\np wcnf 2 1 5\n",
                ParseErrorKind::kMalformedHeader},
        BadWcnf{"p wcnf 2 1 5\n1 3 0\n", ParseErrorKind::kLiteralOutOfRange},
        BadWcnf{"p wcnf 2 1 5\n0 1 0\n", ParseErrorKind::kNonPositiveWeight},
        BadWcnf{"p wcnf 2 1 5\n6 1 0\n", ParseErrorKind::kWeightAboveTop},
        BadWcnf{"p wcnf 2 1 5\n1 1 2\n", ParseErrorKind::kSyntax}));

TEST(ParseError, MessageCarriesLine) {
  try {
    ParseWcnf("c comment\np wcnf 2 1 5\n1 7 0\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(ParseNative, SoftLinearOverInteger) {
  const Problem p =
      ParseNative("int x 1 3; soft 2 linear x <= 1; linear x >= 2\n");
  ASSERT_EQ(p.soft.size(), 1u);
  EXPECT_EQ(p.soft[0].weight, 2u);
  const OracleResult o = BruteForceOptimum(p);
  ASSERT_EQ(o.status, OracleResult::kOptimal);
  EXPECT_EQ(o.cost, 2u);
}

TEST(ParseNative, HardOnlyHasZeroOptimum) {
  const Problem p = ParseNative("bool a b\nclause a b\n");
  EXPECT_TRUE(p.objective.empty());
  const OracleResult o = BruteForceOptimum(p);
  ASSERT_EQ(o.status, OracleResult::kOptimal);
  EXPECT_EQ(o.cost, 0u);
}

TEST(ParseNative, ContingentInstanceBothEncodingsHaveOptimumOne) {
  // b = 1 with a = c = d = 0 satisfies every hard clause.
  for (const char* name : {"contingent.cop", "contingent_soft.cop"}) {
    const OracleResult o = BruteForceOptimum(LoadData(name));
    ASSERT_EQ(o.status, OracleResult::kOptimal) << name;
    EXPECT_EQ(o.cost, 1u) << name;
  }
}

TEST(ParseNative, BoundLiteralsAndCoefficients) {
  const Problem p = ParseNative(
      "int x -2 4\nint z 0 3\nbool b\n"
      "clause x>=3 z<=0 ~b\nclause x!=1 x=2\n"
      "linear 2*x - 3*z + b >= -4\nminimize 3*b\n");
  ASSERT_EQ(p.hard.size(), 3u);
  const auto& c = std::get<ClauseConstraint>(p.hard[0]);
  EXPECT_EQ(c.lits[0], (Literal{0, LitKind::kGeq, 3}));
  EXPECT_EQ(c.lits[1], (Literal{1, LitKind::kLeq, 0}));
  EXPECT_EQ(c.lits[2], Literal::BoolFalse(2));
  const auto& lin = std::get<LinearConstraint>(p.hard[2]);
  EXPECT_EQ(lin.rel, Relation::kGe);
  EXPECT_EQ(lin.rhs, -4);
  EXPECT_EQ(lin.terms, (std::vector<Term>{{2, 0}, {-3, 1}, {1, 2}}));
  ASSERT_EQ(p.objective.size(), 1u);
  EXPECT_EQ(p.objective[0].weight, 3u);
}

struct BadNative {
  const char* text;
  ParseErrorKind kind;
};

class ParseNativeErrors : public ::testing::TestWithParam<BadNative> {};

TEST_P(ParseNativeErrors, ReportsKind) {
  try {
    ParseNative(GetParam().text);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), GetParam().kind) << e.what();
  }
}

INSTANTIATE_TEST_SUITE_P(
    Cases, ParseNativeErrors,
    ::testing::Values(
        BadNative{"clause a\n", ParseErrorKind::kUndeclaredVariable},
        BadNative{"int x 3 1\n", ParseErrorKind::kEmptyDomain},
        BadNative{"int x 0 3\nlinear 1.5*x <= 2\n",
                  ParseErrorKind::kNonIntegerCoefficient},
        BadNative{"bool a\nsoft 0 clause a\n",
                  ParseErrorKind::kNonPositiveWeight},
        BadNative{"bool a\nfrobnicate a\n", ParseErrorKind::kSyntax}));

TEST(ReifySoft, SoftClauseGetsRelaxationLiteral) {
  Problem p;
  const int b = p.AddBool("b");
  p.soft.push_back({ClauseConstraint{{Literal::BoolFalse(b)}}, 1});
  const Problem r = ReifySoft(p);
  ASSERT_EQ(r.objective.size(), 1u);
  const int y = r.objective[0].var;
  ASSERT_EQ(r.hard.size(), 1u);
  const auto& c = std::get<ClauseConstraint>(r.hard[0]);
  EXPECT_EQ(c.lits, (std::vector<Literal>{Literal::BoolTrue(y),
                                          Literal::BoolFalse(b)}));
}

TEST(ReifySoft, NoSoftConstraintsLeavesProblemUnchanged) {
  Problem p;
  p.AddBool("a");
  p.hard.emplace_back(ClauseConstraint{{Literal::BoolTrue(0)}});
  EXPECT_EQ(ReifySoft(p), p);
}

TEST(ReifySoft, SoftLinearIsHalfReified) {
  const Problem p = ParseNative("int x 1 3\nsoft 1 linear x <= 1\n");
  ASSERT_EQ(p.hard.size(), 1u);
  const auto& h = std::get<HalfReified>(p.hard[0]);
  const int y = p.objective[0].var;
  EXPECT_EQ(h.guard, Literal::BoolFalse(y));
  // Enumerate: x = 3 is only feasible with y = 1, and x = 1 allows both.
  for (int64_t x = 1; x <= 3; ++x) {
    for (int64_t yv = 0; yv <= 1; ++yv) {
      const std::vector<int64_t> values = {x, yv};
      EXPECT_EQ(Evaluate(p, values).feasible, x <= 1 || yv == 1);
    }
  }
}

TEST(Oracle, TwoVariableOptimum) {
  const Problem p = LoadData("two_var.wcnf");
  const OracleResult o = BruteForceOptimum(p);
  ASSERT_EQ(o.status, OracleResult::kOptimal);
  EXPECT_EQ(o.cost, 1u);
  EXPECT_EQ(o.assignment, (std::vector<int64_t>{1, 0, 0, 0, 1, 0}));
}

TEST(Oracle, ContradictoryHardClausesAreInfeasible) {
  const Problem p = ParseNative("bool a\nclause a\nclause -a\n");
  EXPECT_EQ(BruteForceOptimum(p).status, OracleResult::kInfeasible);
}

TEST(Oracle, CapExceeded) {
  const Problem p = ParseNative("int x 0 999\nint y 0 999\nint z 0 999\n");
  EXPECT_EQ(BruteForceOptimum(p, 1000).status, OracleResult::kCapExceeded);
}

TEST(Format, DetectsWcnfAndNative) {
  EXPECT_EQ(DetectFormat("c hi\np wcnf 1 0 2\n"), InputFormat::kWcnf);
  EXPECT_EQ(DetectFormat("# hi\nbool a\n"), InputFormat::kNative);
}

TEST(Format, NativeRoundTrip) {
  const Problem p = ParseNative(
      "int x -1 4\nbool a b\nclause a x>=2\nlinear x - 2*a <= 1\n"
      "soft 3 clause -b\nsoft 2 linear x >= 3\nminimize 4*a\n");
  const Problem q = ParseNative(WriteNative(p));
  EXPECT_EQ(q, p);
}

TEST(Format, WcnfRoundTripPreservesOptimum) {
  const Problem p = LoadData("random10.wcnf");
  const Problem q = ParseWcnf(WriteWcnf(p));
  EXPECT_EQ(q.soft, p.soft);
  EXPECT_EQ(BruteForceOptimum(q).cost, BruteForceOptimum(p).cost);
}

TEST(Evaluate, CompleteRelaxationIsMinimal) {
  const Problem p = LoadData("two_var.wcnf");
  std::vector<int64_t> values = {1, 0, 1, 1, 1, 1};
  CompleteRelaxation(p, &values);
  EXPECT_EQ(values, (std::vector<int64_t>{1, 0, 0, 0, 1, 0}));
  EXPECT_EQ(Evaluate(p, values).cost, 1u);
}

}  // namespace
}  // namespace ucore
