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

#include "ucore/bounding.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

namespace ucore {
namespace {

constexpr Reason kDecision{ReasonKind::kDecision, 0, 0};

const PbConstraint kBase{{2, 3, 3, 5}, 7};

TEST(Disjoint, TwoCoresFromScratch) {
  std::vector<int64_t> alphas;
  const PbConstraint one = DisjointStrengthen(kBase, {{0, 2, 3}}, &alphas);
  EXPECT_EQ(one, (PbConstraint{{0, 3, 1, 3}, 5}));
  const PbConstraint two =
      DisjointStrengthen(kBase, {{0, 2, 3}, {1, 2, 3}}, &alphas);
  EXPECT_EQ(two, (PbConstraint{{0, 2, 0, 2}, 4}));
  EXPECT_EQ(alphas, (std::vector<int64_t>{2, 1}));
  EXPECT_EQ(DisjointStrengthen(kBase, {{1, 2, 3}}),
            (PbConstraint{{2, 0, 0, 2}, 4}));
}

TEST(Disjoint, CoreBoundMatchesStrengthenedRhs) {
  const std::vector<int64_t> w = {2, 3, 3, 5};
  EXPECT_EQ(DisjointCoreBound(w, {{0, 2, 3}, {1, 2, 3}}), 3);
  EXPECT_EQ(DisjointCoreBound(w, {}), 0);
}

TEST(IncrementalDisjoint, DeactivationRollsBackAndReEliminates) {
  CoreRegistry registry(4, SearchMode::kNested);
  IncrementalDisjoint d(&registry);
  registry.AddListener(&d);
  d.Reset(kBase);
  EXPECT_EQ(d.current(), kBase);
  registry.Register({}, {0, 2, 3}, 0, CoreSource::kConflict);
  EXPECT_EQ(d.current(), (PbConstraint{{0, 3, 1, 3}, 5}));
  registry.Register({}, {1, 2, 3}, 0, CoreSource::kConflict);
  EXPECT_EQ(d.current(), (PbConstraint{{0, 2, 0, 2}, 4}));
  registry.OnObjectiveTrue(0, 1);
  EXPECT_EQ(d.current(), (PbConstraint{{2, 0, 0, 2}, 4}));
  EXPECT_EQ(d.Eliminations(), (std::vector<std::pair<int, int64_t>>{{1, 3}}));
  registry.BackjumpTo(0);
  EXPECT_EQ(d.current(), (PbConstraint{{0, 2, 0, 2}, 4}));
}

TEST(IncrementalDisjoint, PremisesComeFromContributingCores) {
  CoreRegistry registry(3, SearchMode::kNested);
  IncrementalDisjoint d(&registry);
  registry.AddListener(&d);
  d.Reset({{1, 1, 1}, 3});
  const Lit p(5, true), q(6, true);
  registry.Register({p}, {0, 1}, 0, CoreSource::kConflict);
  // Every member's working coefficient is 0, so this core adds nothing.
  registry.Register({q}, {0, 1}, 0, CoreSource::kConflict);
  EXPECT_EQ(d.Premises(), (std::vector<Lit>{p}));
}

TEST(IncrementalDisjoint, RandomSequencesMatchRecomputation) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 300; ++round) {
    const int n = 1 + static_cast<int>(rng() % 7);
    PbConstraint base;
    for (int j = 0; j < n; ++j) base.coefs.push_back(1 + rng() % 9);
    base.bound = 1 + static_cast<int64_t>(rng() % 40);
    CoreRegistry registry(n, SearchMode::kNested);
    IncrementalDisjoint d(&registry);
    registry.AddListener(&d);
    d.Reset(base);
    std::vector<char> truth(n, 0);
    std::vector<std::vector<int>> true_at(1);
    for (int step = 0; step < 30; ++step) {
      const int level = static_cast<int>(true_at.size()) - 1;
      const int op = static_cast<int>(rng() % 4);
      if (op == 0) {
        true_at.emplace_back();
      } else if (op == 1 && level > 0) {
        const int to = static_cast<int>(rng() % level);
        registry.BackjumpTo(to);
        while (static_cast<int>(true_at.size()) - 1 > to) {
          for (int j : true_at.back()) truth[j] = 0;
          true_at.pop_back();
        }
      } else if (op == 2) {
        std::vector<int> members;
        for (int j = 0; j < n; ++j) {
          if (rng() % 2) members.push_back(j);
        }
        if (members.empty()) continue;
        registry.Register({}, members, level, CoreSource::kConflict,
                          [&](int j) { return truth[j] != 0; });
      } else {
        const int j = static_cast<int>(rng() % n);
        if (truth[j]) continue;
        truth[j] = 1;
        true_at.back().push_back(j);
        registry.OnObjectiveTrue(j, level);
      }
      std::vector<std::vector<int>> active;
      for (int id = 0; id < registry.num_records(); ++id) {
        if (registry.record(id).active) {
          active.push_back(registry.record(id).members);
        }
      }
      ASSERT_EQ(d.current(), DisjointStrengthen(base, active));
    }
  }
}

class LpFixture : public ::testing::Test {
 protected:
  void Build(int num_objective, std::vector<int64_t> weights, int extra) {
    engine = std::make_unique<PropagationEngine>(&store);
    for (int j = 0; j < num_objective; ++j) {
      y.push_back(store.Ge(store.NewBoolVar(), 1));
    }
    for (int k = 0; k < extra; ++k) {
      x.push_back(store.Ge(store.NewBoolVar(), 1));
    }
    registry =
        std::make_unique<CoreRegistry>(num_objective, SearchMode::kNested);
    lp = std::make_unique<LpBound>(engine.get(), registry.get(), y, weights);
    registry->AddListener(lp.get());
    engine->AddFixpointPropagator(lp.get());
    lp->SetInferenceCallback(
        [this](const LpInference& inf) { inferences.push_back(inf); });
  }
  void Decide(Lit l) {
    store.PushLevel();
    store.Assign(l, kDecision);
  }

  DomainStore store;
  std::unique_ptr<PropagationEngine> engine;
  std::unique_ptr<CoreRegistry> registry;
  std::unique_ptr<LpBound> lp;
  std::vector<Lit> y;
  std::vector<Lit> x;
  std::vector<LpInference> inferences;
  std::vector<Lit> conflict;
};

TEST_F(LpFixture, FathomIsPremisedOnD) {
  // Objective a + b + c; the core b v c holds under d.
  Build(3, {1, 1, 1}, 1);
  const Lit d = x[0];
  registry->Register({d}, {1, 2}, 0, CoreSource::kConflict);
  lp->SetUpperBound(2);
  Decide(d);
  Decide(y[0]);
  ASSERT_FALSE(engine->Propagate(&conflict));
  ASSERT_EQ(inferences.size(), 1u);
  EXPECT_TRUE(inferences[0].fathom);
  EXPECT_EQ(inferences[0].lower_bound, 2);
  std::vector<Lit> e = inferences[0].explanation;
  std::sort(e.begin(), e.end());
  std::vector<Lit> want = {y[0], d};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(e, want);
}

TEST_F(LpFixture, OverlappingCoresPruneTheHeaviestObjective) {
  Build(4, {2, 3, 3, 5}, 0);
  registry->Register({}, {0, 2, 3}, 0, CoreSource::kConflict);
  registry->Register({}, {1, 2, 3}, 0, CoreSource::kConflict);
  lp->SetUpperBound(4);
  ASSERT_TRUE(engine->Propagate(&conflict));
  EXPECT_EQ(lp->last_bound(), 3);
  EXPECT_TRUE(store.IsFalse(y[3]));
  EXPECT_FALSE(store.IsFalse(y[2]));
  lp->SetUpperBound(3);
  EXPECT_FALSE(engine->Propagate(&conflict));
  EXPECT_TRUE(inferences.back().fathom);
}

TEST_F(LpFixture, FullyFalseCoreFathoms) {
  Build(2, {1, 1}, 1);
  registry->Register({x[0]}, {0, 1}, 0, CoreSource::kConflict);
  Decide(x[0]);
  Decide(~y[0]);
  store.Assign(~y[1], kDecision);
  ASSERT_FALSE(engine->Propagate(&conflict));
  std::vector<Lit> e = inferences.back().explanation;
  std::sort(e.begin(), e.end());
  std::vector<Lit> want = {x[0], ~y[0], ~y[1]};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(e, want);
}

// Every 0/1 objective vector consistent with the explanation and with each
// core whose premises the explanation contains must violate the inference.
void ExpectSound(const LpInference& inf, const std::vector<Lit>& y,
                 const std::vector<int64_t>& w, const CoreRegistry& registry) {
  const int n = static_cast<int>(y.size());
  auto in_e = [&](Lit l) {
    return std::find(inf.explanation.begin(), inf.explanation.end(), l) !=
           inf.explanation.end();
  };
  std::vector<std::vector<int>> cores;
  for (int id = 0; id < registry.num_records(); ++id) {
    const CoreRecord& r = registry.record(id);
    if (std::all_of(r.premises.begin(), r.premises.end(), in_e)) {
      cores.push_back(r.members);
    }
  }
  ASSERT_TRUE(inf.upper_bound.has_value());
  for (int mask = 0; mask < (1 << n); ++mask) {
    bool consistent = true;
    int64_t cost = 0;
    for (int j = 0; j < n; ++j) {
      const bool v = (mask >> j) & 1;
      if (v) cost += w[j];
      if ((v && in_e(~y[j])) || (!v && in_e(y[j]))) consistent = false;
    }
    for (const std::vector<int>& c : cores) {
      consistent &= std::any_of(c.begin(), c.end(),
                                [&](int j) { return (mask >> j) & 1; });
    }
    if (!consistent) continue;
    if (inf.fathom) {
      ASSERT_GE(cost, *inf.upper_bound) << "mask " << mask;
    } else {
      const int j = static_cast<int>(
          std::find(y.begin(), y.end(), ~inf.pruned) - y.begin());
      ASSERT_LT(j, n);
      if ((mask >> j) & 1) ASSERT_GE(cost, *inf.upper_bound) << "mask " << mask;
    }
  }
}

TEST(LpBoundRandom, InferencesAreSound) {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int round = 0; round < 400; ++round) {
    DomainStore store;
    PropagationEngine engine(&store);
    const int n = 2 + static_cast<int>(rng() % 6);
    const int extra = 3;
    std::vector<Lit> y, x;
    std::vector<int64_t> w;
    for (int j = 0; j < n; ++j) {
      y.push_back(store.Ge(store.NewBoolVar(), 1));
      w.push_back(1 + static_cast<int64_t>(rng() % 8));
    }
    for (int k = 0; k < extra; ++k)
      x.push_back(store.Ge(store.NewBoolVar(), 1));
    CoreRegistry registry(n, SearchMode::kNested);
    LpBound lp(&engine, &registry, y, w);
    registry.AddListener(&lp);
    engine.AddFixpointPropagator(&lp);
    std::vector<LpInference> seen;
    lp.SetInferenceCallback(
        [&](const LpInference& inf) { seen.push_back(inf); });
    const int cores = static_cast<int>(rng() % 5);
    for (int c = 0; c < cores; ++c) {
      std::vector<int> members;
      for (int j = 0; j < n; ++j) {
        if (rng() % 2) members.push_back(j);
      }
      if (members.empty()) members.push_back(static_cast<int>(rng() % n));
      std::vector<Lit> premises;
      if (rng() % 2) premises.push_back(x[rng() % extra]);
      registry.Register(premises, members, 0, CoreSource::kConflict);
    }
    int64_t total = 0;
    for (int64_t v : w) total += v;
    lp.SetUpperBound(1 + static_cast<int64_t>(rng() % total));
    store.PushLevel();
    for (Lit l : x) store.Assign(rng() % 3 ? l : ~l, kDecision);
    for (Lit l : y) {
      if (rng() % 3 == 0) store.Assign(rng() % 2 ? l : ~l, kDecision);
    }
    std::vector<Lit> conflict;
    engine.Propagate(&conflict);
    for (const LpInference& inf : seen) {
      ExpectSound(inf, y, w, registry);
      ++checked;
    }
  }
  EXPECT_GT(checked, 50);
}

}  // namespace
}  // namespace ucore
