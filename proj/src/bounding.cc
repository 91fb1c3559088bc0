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

#include <algorithm>
#include <limits>
#include <utility>

namespace ucore {

namespace {

int64_t MinCoef(const PbConstraint& c, const std::vector<int>& members) {
  int64_t alpha = std::numeric_limits<int64_t>::max();
  for (int m : members) alpha = std::min(alpha, c.coefs[m]);
  return members.empty() ? 0 : alpha;
}

void Subtract(PbConstraint* c, const std::vector<int>& members, int64_t alpha) {
  for (int m : members) c->coefs[m] -= alpha;
  c->bound -= alpha;
}

}  // namespace

PbConstraint DisjointStrengthen(const PbConstraint& base,
                                const std::vector<std::vector<int>>& cores,
                                std::vector<int64_t>* alphas) {
  PbConstraint c = base;
  if (alphas != nullptr) alphas->clear();
  for (const std::vector<int>& core : cores) {
    const int64_t alpha = MinCoef(c, core);
    Subtract(&c, core, alpha);
    if (alphas != nullptr) alphas->push_back(alpha);
  }
  return c;
}

int64_t DisjointCoreBound(std::span<const int64_t> weights,
                          const std::vector<std::vector<int>>& cores) {
  PbConstraint base{std::vector<int64_t>(weights.begin(), weights.end()), 0};
  return -DisjointStrengthen(base, cores).bound;
}

mpq_class LpCoreBound(std::span<const int64_t> weights,
                      const std::vector<std::vector<int>>& cores) {
  if (cores.empty()) return 0;
  std::vector<mpq_class> costs;
  for (int64_t w : weights) costs.emplace_back(mpz_class(std::to_string(w)));
  return SolveCoverLp(costs, cores).value;
}

IncrementalDisjoint::IncrementalDisjoint(const CoreRegistry* registry)
    : registry_(*registry) {}

void IncrementalDisjoint::Reset(PbConstraint base) {
  has_base_ = true;
  base_ = std::move(base);
  current_ = base_;
  stack_.clear();
  ++version_;
  Repair(0);
}

void IncrementalDisjoint::Eliminate(int core) {
  const CoreRecord& r = registry_.record(core);
  const int64_t alpha = MinCoef(current_, r.members);
  stack_.push_back({core, alpha, current_});
  Subtract(&current_, r.members, alpha);
}

void IncrementalDisjoint::Repair(int from) {
  if (!has_base_) return;
  size_t keep = stack_.size();
  while (keep > 0 && stack_[keep - 1].core >= from) --keep;
  if (keep < stack_.size()) {
    current_ = std::move(stack_[keep].before);
    stack_.resize(keep);
  }
  for (int id = from; id < registry_.num_records(); ++id) {
    if (registry_.record(id).active) Eliminate(id);
  }
  ++version_;
}

std::vector<std::pair<int, int64_t>> IncrementalDisjoint::Eliminations() const {
  std::vector<std::pair<int, int64_t>> out;
  for (const Entry& e : stack_) out.emplace_back(e.core, e.alpha);
  return out;
}

std::vector<Lit> IncrementalDisjoint::Premises() const {
  std::vector<Lit> out;
  for (const Entry& e : stack_) {
    if (e.alpha <= 0) continue;
    for (Lit l : registry_.record(e.core).premises) {
      if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    }
  }
  return out;
}

LpBound::LpBound(PropagationEngine* engine, const CoreRegistry* registry,
                 std::vector<Lit> objective, std::vector<int64_t> weights)
    : store_(engine->store()),
      registry_(*registry),
      objective_(std::move(objective)),
      weights_(std::move(weights)) {}

void LpBound::SetUpperBound(int64_t u) {
  upper_ = u;
  dirty_ = true;
}

bool LpBound::Propagate(PropagationEngine& engine, std::vector<Lit>* conflict) {
  if (!dirty_) return true;
  dirty_ = false;
  ++calls_;
  const int n = static_cast<int>(objective_.size());
  std::vector<LBool> value(n);
  for (int j = 0; j < n; ++j) value[j] = store_.Value(objective_[j]);

  std::vector<int> row_core;
  std::vector<std::vector<int>> rows;
  std::vector<int> column(n, -1);
  std::vector<int> column_var;
  for (int id = 0; id < registry_.num_records(); ++id) {
    const CoreRecord& r = registry_.record(id);
    bool satisfied = false;
    std::vector<int> free;
    for (int m : r.members) {
      if (value[m] == LBool::kTrue) satisfied = true;
      if (value[m] == LBool::kUndef) free.push_back(m);
    }
    if (satisfied) continue;
    if (free.empty()) {
      LpInference inf;
      inf.fathom = true;
      inf.upper_bound = upper_;
      inf.explanation = r.premises;
      for (int m : r.members) inf.explanation.push_back(~objective_[m]);
      if (on_inference_) on_inference_(inf);
      *conflict = std::move(inf.explanation);
      return false;
    }
    std::vector<int> row;
    for (int m : free) {
      if (column[m] < 0) {
        column[m] = static_cast<int>(column_var.size());
        column_var.push_back(m);
      }
      row.push_back(column[m]);
    }
    rows.push_back(std::move(row));
    row_core.push_back(id);
  }
  if (!upper_) return true;

  mpq_class fixed_cost = 0;
  for (int j = 0; j < n; ++j) {
    if (value[j] == LBool::kTrue)
      fixed_cost += mpz_class(std::to_string(weights_[j]));
  }
  CoverLpSolution sol;
  if (!rows.empty()) {
    std::vector<mpq_class> costs;
    for (int m : column_var) {
      costs.emplace_back(mpz_class(std::to_string(weights_[m])));
    }
    sol = SolveCoverLp(costs, rows);
  }
  const mpq_class bound = fixed_cost + sol.value;
  last_bound_ = bound;
  const mpq_class threshold = mpq_class(mpz_class(std::to_string(*upper_))) - 1;

  auto explain = [&]() {
    std::vector<Lit> e;
    for (int j = 0; j < n; ++j) {
      if (value[j] == LBool::kTrue) e.push_back(objective_[j]);
    }
    std::vector<mpq_class> used(n);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (sgn(sol.duals[r]) <= 0) continue;
      const CoreRecord& rec = registry_.record(row_core[r]);
      for (Lit l : rec.premises) {
        if (std::find(e.begin(), e.end(), l) == e.end()) e.push_back(l);
      }
      for (int m : rec.members) {
        if (value[m] == LBool::kFalse) used[m] += sol.duals[r];
      }
    }
    for (int j = 0; j < n; ++j) {
      if (value[j] == LBool::kFalse &&
          used[j] > mpq_class(mpz_class(std::to_string(weights_[j])))) {
        e.push_back(~objective_[j]);
      }
    }
    return e;
  };

  if (bound > threshold) {
    LpInference inf;
    inf.fathom = true;
    inf.explanation = explain();
    inf.lower_bound = bound;
    inf.upper_bound = upper_;
    if (on_inference_) on_inference_(inf);
    *conflict = std::move(inf.explanation);
    return false;
  }
  std::optional<std::vector<Lit>> explanation;
  for (int j = 0; j < n; ++j) {
    if (value[j] != LBool::kUndef) continue;
    const mpq_class reduced =
        column[j] >= 0 ? sol.reduced[column[j]]
                       : mpq_class(mpz_class(std::to_string(weights_[j])));
    if (bound + reduced <= threshold) continue;
    if (!explanation) explanation = explain();
    LpInference inf;
    inf.pruned = ~objective_[j];
    inf.explanation = *explanation;
    inf.lower_bound = bound;
    inf.upper_bound = upper_;
    if (on_inference_) on_inference_(inf);
    if (!engine.Enqueue(~objective_[j], *explanation, conflict)) return false;
  }
  return true;
}

}  // namespace ucore
