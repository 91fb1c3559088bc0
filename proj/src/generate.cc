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

#include "ucore/generate.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace ucore {

namespace {

class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}
  // Uniform in [lo, hi].
  int64_t Int(int64_t lo, int64_t hi) {
    return lo +
           static_cast<int64_t>(gen_() % static_cast<uint64_t>(hi - lo + 1));
  }
  bool Coin() { return (gen_() & 1) != 0; }
  std::vector<int> Distinct(int n, int k) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    for (int i = 0; i < k; ++i) std::swap(all[i], all[Int(i, n - 1)]);
    all.resize(k);
    return all;
  }

 private:
  std::mt19937_64 gen_;
};

Literal BoolLit(int var, bool positive) {
  return positive ? Literal::BoolTrue(var) : Literal::BoolFalse(var);
}

ClauseConstraint RandomClause(Rng& rng, int vars, int width) {
  ClauseConstraint c;
  for (int v : rng.Distinct(
           vars, static_cast<int>(rng.Int(1, std::min(width, vars))))) {
    c.lits.push_back(BoolLit(v, rng.Coin()));
  }
  return c;
}

ClauseConstraint PlantedClause(Rng& rng, const std::vector<bool>& planted,
                               int width) {
  const int n = static_cast<int>(planted.size());
  ClauseConstraint c;
  for (int v : rng.Distinct(n, std::min(width, n))) {
    c.lits.push_back(BoolLit(v, rng.Coin()));
  }
  bool sat = false;
  for (const Literal& l : c.lits) sat |= l.HoldsFor(planted[l.var] ? 1 : 0);
  if (!sat) {
    Literal& l = c.lits[rng.Int(0, static_cast<int64_t>(c.lits.size()) - 1)];
    l = BoolLit(l.var, planted[l.var]);
  }
  return c;
}

}  // namespace

Problem GenerateRandomWcnf(const WcnfParams& params, uint64_t seed) {
  Rng rng(seed);
  Problem p;
  for (int i = 0; i < params.vars; ++i) p.AddBool("x" + std::to_string(i + 1));
  for (int i = 0; i < params.hard; ++i) {
    p.hard.emplace_back(RandomClause(rng, params.vars, params.width));
  }
  for (int i = 0; i < params.soft; ++i) {
    const int64_t w = rng.Int(params.min_weight, params.max_weight);
    p.soft.push_back({RandomClause(rng, params.vars, params.width),
                      static_cast<uint64_t>(w)});
  }
  return ReifySoft(std::move(p));
}

Problem GenerateRandomNative(const NativeParams& params, uint64_t seed) {
  Rng rng(seed);
  Problem p;
  const int n = static_cast<int>(rng.Int(1, params.vars));
  std::vector<int64_t> point;
  for (int i = 0; i < n; ++i) {
    const std::string name = "v" + std::to_string(i + 1);
    if (rng.Int(0, 2) == 0) {
      p.AddBool(name);
    } else {
      const int64_t lo = rng.Int(-2, 1);
      p.AddInt(name, lo, lo + rng.Int(1, params.max_domain - 1));
    }
    point.push_back(rng.Int(p.vars[i].lo, p.vars[i].hi));
  }
  auto random_basic = [&]() -> BasicConstraint {
    if (rng.Coin()) {
      ClauseConstraint c;
      for (int v :
           rng.Distinct(n, static_cast<int>(rng.Int(1, std::min(n, 3))))) {
        const Variable& var = p.vars[v];
        const auto kind = static_cast<LitKind>(rng.Int(0, 3));
        c.lits.push_back({v, kind, rng.Int(var.lo, var.hi)});
      }
      return c;
    }
    LinearConstraint lin;
    __int128 at_point = 0;
    for (int v :
         rng.Distinct(n, static_cast<int>(rng.Int(1, std::min(n, 3))))) {
      int64_t coef = rng.Int(-3, 2);
      if (coef >= 0) ++coef;
      lin.terms.push_back({coef, v});
      at_point += static_cast<__int128>(coef) * point[v];
    }
    lin.rel = static_cast<Relation>(rng.Int(0, 2));
    const int64_t slack = rng.Int(0, 2);
    lin.rhs = static_cast<int64_t>(at_point);
    if (lin.rel == Relation::kLe) lin.rhs += slack;
    if (lin.rel == Relation::kGe) lin.rhs -= slack;
    return lin;
  };
  for (int i = 0; i < params.constraints; ++i) {
    BasicConstraint b = random_basic();
    if (auto* c = std::get_if<ClauseConstraint>(&b)) {
      p.hard.emplace_back(std::move(*c));
    } else {
      p.hard.emplace_back(std::get<LinearConstraint>(std::move(b)));
    }
  }
  for (int i = 0; i < params.soft; ++i) {
    const int64_t w = rng.Int(params.min_weight, params.max_weight);
    p.soft.push_back({random_basic(), static_cast<uint64_t>(w)});
  }
  p = ReifySoft(std::move(p));
  p.Validate();
  return p;
}

Problem GenerateMostlySat(const MostlySatParams& params, uint64_t seed) {
  Rng rng(seed);
  Problem p;
  std::vector<bool> planted;
  for (int i = 0; i < params.vars; ++i) {
    p.AddBool("x" + std::to_string(i + 1));
    planted.push_back(rng.Coin());
  }
  for (int i = 0; i < params.hard; ++i) {
    p.hard.emplace_back(PlantedClause(rng, planted, params.width));
  }
  std::vector<SoftSpec> soft;
  for (int v : rng.Distinct(params.vars, params.violated)) {
    soft.push_back({ClauseConstraint{{Literal::BoolTrue(v)}}, 1});
    soft.push_back({ClauseConstraint{{Literal::BoolFalse(v)}}, 1});
  }
  while (static_cast<int>(soft.size()) < params.soft) {
    soft.push_back({PlantedClause(rng, planted, params.width), 1});
  }
  for (size_t i = soft.size(); i > 1; --i) {
    std::swap(soft[i - 1], soft[rng.Int(0, static_cast<int64_t>(i) - 1)]);
  }
  p.soft = std::move(soft);
  return ReifySoft(std::move(p));
}

}  // namespace ucore
