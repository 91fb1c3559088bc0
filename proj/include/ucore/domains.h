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

// Variable store with an order encoding of integer domains, the assignment
// trail with decision levels, and the reasons that form the implication
// graph.
//
// Every model variable x with domain lo..hi owns the atoms [x >= v] for
// v in lo+1..hi and, for domains of width at most kMaxEqWidth, the atoms
// [x = v] for the interior values. The bound literals [x = lo] and [x = hi]
// are aliases of ~[x >= lo+1] and [x >= hi]. ChannelClauses() returns the
// clauses that keep these atoms consistent; the propagation engine attaches
// them. Atom 0 is the constant true.

#ifndef UCORE_DOMAINS_H_
#define UCORE_DOMAINS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ucore/literal.h"

namespace ucore {

enum class ReasonKind : uint8_t {
  kNone,
  kDecision,
  kMultipleDecision,
  kClause,
  kExplained,
};

// kClause: `index` is a clause id owned by the propagation engine.
// kExplained: `index`/`size` address the explanation arena of the store.
struct Reason {
  ReasonKind kind = ReasonKind::kNone;
  int32_t index = -1;
  int32_t size = 0;
};

enum class AtomKind : uint8_t { kConstant, kGe, kEq, kAux };

struct AtomInfo {
  AtomKind kind = AtomKind::kAux;
  int model_var = -1;
  int64_t value = 0;
};

enum class AssignResult { kOk, kAlreadyTrue, kConflict };

// State that must be restored when the store backjumps.
class Trailed {
 public:
  virtual ~Trailed() = default;
  virtual void OnBackjump(int level) = 0;
};

class DomainStore {
 public:
  static constexpr int64_t kMaxEqWidth = 4096;
  static constexpr int64_t kMaxWidth = int64_t{1} << 20;

  DomainStore();
  DomainStore(const DomainStore&) = delete;
  DomainStore& operator=(const DomainStore&) = delete;

  int NewBoolVar();
  // Throws std::invalid_argument for empty or overly wide domains.
  int NewIntVar(int64_t lo, int64_t hi);
  // A fresh atom that belongs to no model variable.
  Var NewAuxVar();

  // Clauses linking the atoms of model variable x.
  std::vector<std::vector<Lit>> ChannelClauses(int x) const;

  int num_model_vars() const { return static_cast<int>(vars_.size()); }
  int num_atoms() const { return static_cast<int>(assigns_.size()); }
  bool IsBool(int x) const { return vars_[x].is_bool; }
  int64_t InitialLb(int x) const { return vars_[x].lo; }
  int64_t InitialUb(int x) const { return vars_[x].hi; }
  bool HasEqAtoms(int x) const;

  Lit True() const { return Lit(0, true); }
  Lit False() const { return Lit(0, false); }
  Lit Ge(int x, int64_t v) const;
  Lit Le(int x, int64_t v) const { return ~Ge(x, v + 1); }
  // Throws std::invalid_argument when x has no equality atoms.
  Lit Eq(int x, int64_t v) const;
  Lit LitFor(const Literal& literal) const;
  // Throws std::invalid_argument for constant and auxiliary atoms.
  Literal ToLiteral(Lit l) const;
  const AtomInfo& info(Var v) const { return info_[v]; }

  int64_t Lb(int x) const { return vars_[x].lb; }
  int64_t Ub(int x) const { return vars_[x].ub; }
  bool Fixed(int x) const { return vars_[x].lb == vars_[x].ub; }
  bool Contains(int x, int64_t v) const;

  LBool Value(Lit l) const {
    const LBool a = assigns_[l.var()];
    if (a == LBool::kUndef || l.positive()) return a;
    return a == LBool::kTrue ? LBool::kFalse : LBool::kTrue;
  }
  bool IsTrue(Lit l) const { return Value(l) == LBool::kTrue; }
  bool IsFalse(Lit l) const { return Value(l) == LBool::kFalse; }
  int Level(Var v) const { return levels_[v]; }
  const Reason& reason(Var v) const { return reasons_[v]; }

  AssignResult Assign(Lit l, Reason reason);
  // Assigns l with reason `explanation -> l`; every explanation literal must
  // be true.
  AssignResult AssignExplained(Lit l, std::span<const Lit> explanation);
  std::span<const Lit> Explanation(const Reason& reason) const;

  int PushLevel();
  int level() const { return static_cast<int>(level_starts_.size()); }
  // Undoes every assignment above `level` and notifies trailed state.
  void Backjump(int level);
  // Throws std::logic_error when l is not currently true.
  int DecisionLevelOf(Lit l) const;

  const std::vector<Lit>& trail() const { return trail_; }
  int LevelStart(int level) const;

  void AddTrailed(Trailed* t) { trailed_.push_back(t); }

 private:
  struct VarData {
    int64_t lo = 0;
    int64_t hi = 0;
    int64_t lb = 0;
    int64_t ub = 0;
    bool is_bool = false;
    Var ge_base = kNoVar;
    Var eq_base = kNoVar;
  };
  struct BoundUndo {
    int var;
    int64_t lb;
    int64_t ub;
  };

  Var NewAtom(AtomInfo info);
  Lit GeAtom(int x, int64_t v) const {
    return Lit(vars_[x].ge_base + static_cast<Var>(v - vars_[x].lo - 1), true);
  }

  std::vector<VarData> vars_;
  std::vector<AtomInfo> info_;
  std::vector<LBool> assigns_;
  std::vector<int> levels_;
  std::vector<Reason> reasons_;
  std::vector<Lit> trail_;
  std::vector<int> level_starts_;
  std::vector<BoundUndo> bound_log_;
  std::vector<int> bound_log_starts_;
  std::vector<Lit> arena_;
  std::vector<int> arena_starts_;
  std::vector<Trailed*> trailed_;
};

}  // namespace ucore

#endif  // UCORE_DOMAINS_H_
