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

#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace ucore {

int Problem::AddBool(std::string name) {
  vars.push_back({std::move(name), 0, 1, true, false});
  return static_cast<int>(vars.size()) - 1;
}

int Problem::AddInt(std::string name, int64_t lo, int64_t hi) {
  vars.push_back({std::move(name), lo, hi, false, false});
  return static_cast<int>(vars.size()) - 1;
}

std::optional<int> Problem::FindVar(std::string_view name) const {
  for (int i = 0; i < static_cast<int>(vars.size()); ++i) {
    if (vars[i].name == name) return i;
  }
  return std::nullopt;
}

int64_t Problem::TotalWeight() const {
  uint64_t total = 0;
  for (const ObjectiveTerm& t : objective) {
    if (__builtin_add_overflow(total, t.weight, &total) ||
        total > static_cast<uint64_t>(std::numeric_limits<int64_t>::max())) {
      throw std::overflow_error("objective weights overflow int64");
    }
  }
  return static_cast<int64_t>(total);
}

namespace {

void CheckVar(const Problem& p, int var) {
  if (var < 0 || var >= static_cast<int>(p.vars.size())) {
    throw std::invalid_argument("reference to undeclared variable " +
                                std::to_string(var));
  }
}

void CheckBasic(const Problem& p, const BasicConstraint& c) {
  if (const auto* clause = std::get_if<ClauseConstraint>(&c)) {
    if (clause->lits.empty()) throw std::invalid_argument("empty clause");
    for (const Literal& l : clause->lits) CheckVar(p, l.var);
  } else {
    for (const Term& t : std::get<LinearConstraint>(c).terms) {
      CheckVar(p, t.var);
    }
  }
}

}  // namespace

void Problem::Validate() const {
  for (const Variable& v : vars) {
    if (v.lo > v.hi) {
      throw std::invalid_argument("empty domain for " + v.name);
    }
  }
  for (const Constraint& c : hard) {
    if (const auto* h = std::get_if<HalfReified>(&c)) {
      CheckVar(*this, h->guard.var);
      CheckBasic(*this, h->inner);
    } else if (const auto* cl = std::get_if<ClauseConstraint>(&c)) {
      CheckBasic(*this, *cl);
    } else {
      CheckBasic(*this, std::get<LinearConstraint>(c));
    }
  }
  for (const SoftSpec& s : soft) {
    if (s.weight == 0) throw std::invalid_argument("soft weight must be >= 1");
    CheckBasic(*this, s.inner);
  }
  std::set<int> seen;
  for (const ObjectiveTerm& t : objective) {
    CheckVar(*this, t.var);
    if (!vars[t.var].is_bool) {
      throw std::invalid_argument("objective variable " + vars[t.var].name +
                                  " is not Boolean");
    }
    if (t.weight == 0) throw std::invalid_argument("objective weight 0");
    if (!seen.insert(t.var).second) {
      throw std::invalid_argument("objective variable " + vars[t.var].name +
                                  " repeated");
    }
  }
  TotalWeight();
}

Problem ReifySoft(Problem problem) {
  for (size_t i = 0; i < problem.soft.size(); ++i) {
    SoftSpec& s = problem.soft[i];
    if (s.relax_var >= 0) continue;
    const int y = problem.AddBool("y#" + std::to_string(i + 1));
    problem.vars[y].relaxation = true;
    s.relax_var = y;
    s.reified_index = static_cast<int>(problem.hard.size());
    if (const auto* clause = std::get_if<ClauseConstraint>(&s.inner)) {
      ClauseConstraint reified;
      reified.lits.push_back(Literal::BoolTrue(y));
      reified.lits.insert(reified.lits.end(), clause->lits.begin(),
                          clause->lits.end());
      problem.hard.emplace_back(std::move(reified));
    } else {
      problem.hard.emplace_back(HalfReified{Literal::BoolFalse(y), s.inner});
    }
    problem.objective.push_back({y, s.weight});
  }
  return problem;
}

bool Holds(const BasicConstraint& c, std::span<const int64_t> values) {
  if (const auto* clause = std::get_if<ClauseConstraint>(&c)) {
    for (const Literal& l : clause->lits) {
      if (l.HoldsFor(values[l.var])) return true;
    }
    return false;
  }
  const auto& lin = std::get<LinearConstraint>(c);
  __int128 sum = 0;
  for (const Term& t : lin.terms) {
    sum += static_cast<__int128>(t.coef) * values[t.var];
  }
  switch (lin.rel) {
    case Relation::kLe:
      return sum <= lin.rhs;
    case Relation::kGe:
      return sum >= lin.rhs;
    case Relation::kEq:
      return sum == lin.rhs;
  }
  return false;
}

bool Holds(const Constraint& c, std::span<const int64_t> values) {
  if (const auto* h = std::get_if<HalfReified>(&c)) {
    return !h->guard.HoldsFor(values[h->guard.var]) || Holds(h->inner, values);
  }
  if (const auto* clause = std::get_if<ClauseConstraint>(&c)) {
    return Holds(BasicConstraint(*clause), values);
  }
  return Holds(BasicConstraint(std::get<LinearConstraint>(c)), values);
}

Evaluation Evaluate(const Problem& problem, std::span<const int64_t> values) {
  Evaluation e;
  if (values.size() != problem.vars.size()) return e;
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] < problem.vars[i].lo || values[i] > problem.vars[i].hi) {
      return e;
    }
  }
  for (const Constraint& c : problem.hard) {
    if (!Holds(c, values)) return e;
  }
  e.feasible = true;
  for (const ObjectiveTerm& t : problem.objective) {
    if (values[t.var] != 0) e.cost += t.weight;
  }
  return e;
}

void CompleteRelaxation(const Problem& problem, std::vector<int64_t>* values) {
  for (const SoftSpec& s : problem.soft) {
    if (s.relax_var < 0) continue;
    (*values)[s.relax_var] = Holds(s.inner, *values) ? 0 : 1;
  }
}

OracleResult BruteForceOptimum(const Problem& problem, uint64_t max_space) {
  OracleResult result;
  std::vector<int> free_vars;
  uint64_t space = 1;
  for (int i = 0; i < static_cast<int>(problem.vars.size()); ++i) {
    if (problem.vars[i].relaxation) continue;
    free_vars.push_back(i);
    const uint64_t size = static_cast<uint64_t>(problem.vars[i].DomainSize());
    if (__builtin_mul_overflow(space, size, &space) || space > max_space) {
      result.status = OracleResult::kCapExceeded;
      return result;
    }
  }

  std::set<int> reified;
  for (const SoftSpec& s : problem.soft) {
    if (s.reified_index >= 0) reified.insert(s.reified_index);
  }
  std::vector<const Constraint*> user_hard;
  for (int i = 0; i < static_cast<int>(problem.hard.size()); ++i) {
    if (!reified.count(i)) user_hard.push_back(&problem.hard[i]);
  }

  std::vector<int64_t> values(problem.vars.size(), 0);
  for (int v : free_vars) values[v] = problem.vars[v].lo;
  bool found = false;
  while (true) {
    bool feasible = true;
    for (const Constraint* c : user_hard) {
      if (!Holds(*c, values)) {
        feasible = false;
        break;
      }
    }
    if (feasible) {
      CompleteRelaxation(problem, &values);
      uint64_t cost = 0;
      for (const ObjectiveTerm& t : problem.objective) {
        if (values[t.var] != 0) cost += t.weight;
      }
      if (!found || cost < result.cost) {
        found = true;
        result.cost = cost;
        result.assignment = values;
      }
    }
    // Odometer increment, last variable fastest.
    int pos = static_cast<int>(free_vars.size()) - 1;
    while (pos >= 0) {
      const int v = free_vars[pos];
      if (values[v] < problem.vars[v].hi) {
        ++values[v];
        break;
      }
      values[v] = problem.vars[v].lo;
      --pos;
    }
    if (pos < 0) break;
  }
  result.status = found ? OracleResult::kOptimal : OracleResult::kInfeasible;
  return result;
}

}  // namespace ucore
