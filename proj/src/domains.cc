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

#include "ucore/domains.h"

#include <stdexcept>
#include <string>

namespace ucore {

DomainStore::DomainStore() {
  NewAtom({AtomKind::kConstant, -1, 1});
  assigns_[0] = LBool::kTrue;
  levels_[0] = 0;
  trail_.push_back(True());
}

Var DomainStore::NewAtom(AtomInfo info) {
  info_.push_back(info);
  assigns_.push_back(LBool::kUndef);
  levels_.push_back(-1);
  reasons_.emplace_back();
  return static_cast<Var>(assigns_.size()) - 1;
}

int DomainStore::NewBoolVar() {
  const int x = NewIntVar(0, 1);
  vars_[x].is_bool = true;
  return x;
}

int DomainStore::NewIntVar(int64_t lo, int64_t hi) {
  if (lo > hi) throw std::invalid_argument("empty domain");
  if (hi - lo > kMaxWidth || hi - lo < 0) {
    throw std::invalid_argument("domain wider than " +
                                std::to_string(kMaxWidth));
  }
  const int x = static_cast<int>(vars_.size());
  VarData d;
  d.lo = d.lb = lo;
  d.hi = d.ub = hi;
  if (lo < hi) {
    d.ge_base = static_cast<Var>(assigns_.size());
    for (int64_t v = lo + 1; v <= hi; ++v) NewAtom({AtomKind::kGe, x, v});
    if (hi - lo <= kMaxEqWidth && hi - lo >= 2) {
      d.eq_base = static_cast<Var>(assigns_.size());
      for (int64_t v = lo + 1; v < hi; ++v) NewAtom({AtomKind::kEq, x, v});
    }
  }
  vars_.push_back(d);
  return x;
}

Var DomainStore::NewAuxVar() { return NewAtom({AtomKind::kAux, -1, 0}); }

bool DomainStore::HasEqAtoms(int x) const {
  const VarData& d = vars_[x];
  return d.hi - d.lo < 2 || d.eq_base != kNoVar;
}

std::vector<std::vector<Lit>> DomainStore::ChannelClauses(int x) const {
  std::vector<std::vector<Lit>> out;
  const VarData& d = vars_[x];
  for (int64_t v = d.lo + 1; v < d.hi; ++v) {
    out.push_back({~GeAtom(x, v + 1), GeAtom(x, v)});
  }
  if (d.eq_base == kNoVar) return out;
  for (int64_t v = d.lo + 1; v < d.hi; ++v) {
    const Lit e = Eq(x, v);
    out.push_back({~e, GeAtom(x, v)});
    out.push_back({~e, ~GeAtom(x, v + 1)});
    out.push_back({~GeAtom(x, v), GeAtom(x, v + 1), e});
  }
  return out;
}

Lit DomainStore::Ge(int x, int64_t v) const {
  const VarData& d = vars_[x];
  if (v <= d.lo) return True();
  if (v > d.hi) return False();
  return GeAtom(x, v);
}

Lit DomainStore::Eq(int x, int64_t v) const {
  const VarData& d = vars_[x];
  if (v < d.lo || v > d.hi) return False();
  if (d.lo == d.hi) return True();
  if (v == d.lo) return ~GeAtom(x, d.lo + 1);
  if (v == d.hi) return GeAtom(x, d.hi);
  if (d.eq_base == kNoVar) {
    throw std::invalid_argument("no equality atoms for a domain this wide");
  }
  return Lit(d.eq_base + static_cast<Var>(v - d.lo - 1), true);
}

Lit DomainStore::LitFor(const Literal& literal) const {
  switch (literal.kind) {
    case LitKind::kGeq:
      return Ge(literal.var, literal.value);
    case LitKind::kLeq:
      return Le(literal.var, literal.value);
    case LitKind::kEq:
      return Eq(literal.var, literal.value);
    case LitKind::kNeq:
      return ~Eq(literal.var, literal.value);
  }
  return True();
}

Literal DomainStore::ToLiteral(Lit l) const {
  const AtomInfo& a = info_[l.var()];
  if (a.kind == AtomKind::kConstant || a.kind == AtomKind::kAux) {
    throw std::invalid_argument("atom has no model literal");
  }
  if (a.kind == AtomKind::kEq) {
    return {a.model_var, l.positive() ? LitKind::kEq : LitKind::kNeq, a.value};
  }
  if (vars_[a.model_var].is_bool) {
    return l.positive() ? Literal::BoolTrue(a.model_var)
                        : Literal::BoolFalse(a.model_var);
  }
  return l.positive() ? Literal{a.model_var, LitKind::kGeq, a.value}
                      : Literal{a.model_var, LitKind::kLeq, a.value - 1};
}

bool DomainStore::Contains(int x, int64_t v) const {
  const VarData& d = vars_[x];
  if (v < d.lb || v > d.ub) return false;
  if (v == d.lb || v == d.ub || d.eq_base == kNoVar) return true;
  return !IsFalse(Eq(x, v));
}

AssignResult DomainStore::Assign(Lit l, Reason reason) {
  const LBool value = Value(l);
  if (value == LBool::kTrue) return AssignResult::kAlreadyTrue;
  if (value == LBool::kFalse) return AssignResult::kConflict;
  const Var v = l.var();
  assigns_[v] = l.positive() ? LBool::kTrue : LBool::kFalse;
  levels_[v] = level();
  reasons_[v] = reason;
  trail_.push_back(l);
  const AtomInfo& a = info_[v];
  if (a.kind == AtomKind::kGe) {
    VarData& d = vars_[a.model_var];
    if (l.positive() && a.value > d.lb) {
      bound_log_.push_back({a.model_var, d.lb, d.ub});
      d.lb = a.value;
    } else if (!l.positive() && a.value - 1 < d.ub) {
      bound_log_.push_back({a.model_var, d.lb, d.ub});
      d.ub = a.value - 1;
    }
  }
  return AssignResult::kOk;
}

AssignResult DomainStore::AssignExplained(Lit l,
                                          std::span<const Lit> explanation) {
  const LBool value = Value(l);
  if (value != LBool::kUndef) {
    return value == LBool::kTrue ? AssignResult::kAlreadyTrue
                                 : AssignResult::kConflict;
  }
  Reason r;
  r.kind = ReasonKind::kExplained;
  r.index = static_cast<int32_t>(arena_.size());
  r.size = static_cast<int32_t>(explanation.size());
  arena_.insert(arena_.end(), explanation.begin(), explanation.end());
  return Assign(l, r);
}

std::span<const Lit> DomainStore::Explanation(const Reason& reason) const {
  if (reason.kind != ReasonKind::kExplained) return {};
  return std::span<const Lit>(arena_).subspan(reason.index, reason.size);
}

int DomainStore::PushLevel() {
  level_starts_.push_back(static_cast<int>(trail_.size()));
  bound_log_starts_.push_back(static_cast<int>(bound_log_.size()));
  arena_starts_.push_back(static_cast<int>(arena_.size()));
  return level();
}

int DomainStore::LevelStart(int lvl) const {
  if (lvl <= 0) return 0;
  if (lvl > level()) return static_cast<int>(trail_.size());
  return level_starts_[lvl - 1];
}

void DomainStore::Backjump(int lvl) {
  if (lvl >= level()) return;
  const int trail_start = level_starts_[lvl];
  for (int i = static_cast<int>(trail_.size()) - 1; i >= trail_start; --i) {
    const Var v = trail_[i].var();
    assigns_[v] = LBool::kUndef;
    levels_[v] = -1;
    reasons_[v] = Reason();
  }
  trail_.resize(trail_start);
  const int bound_start = bound_log_starts_[lvl];
  for (int i = static_cast<int>(bound_log_.size()) - 1; i >= bound_start; --i) {
    const BoundUndo& u = bound_log_[i];
    vars_[u.var].lb = u.lb;
    vars_[u.var].ub = u.ub;
  }
  bound_log_.resize(bound_start);
  arena_.resize(arena_starts_[lvl]);
  level_starts_.resize(lvl);
  bound_log_starts_.resize(lvl);
  arena_starts_.resize(lvl);
  for (Trailed* t : trailed_) t->OnBackjump(lvl);
}

int DomainStore::DecisionLevelOf(Lit l) const {
  if (!IsTrue(l)) throw std::logic_error("literal is not true");
  return levels_[l.var()];
}

}  // namespace ucore
