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

// Propagation to fixpoint over clauses, linear inequalities and pluggable
// fixpoint propagators. Binary clauses run first, then long clauses one trail
// literal at a time, then linear constraints, then fixpoint propagators.
//
// A conflict is reported as a nogood N: a set of currently true literals
// whose conjunction is inconsistent with the constraints.

#ifndef UCORE_PROPAGATION_H_
#define UCORE_PROPAGATION_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ucore/domains.h"
#include "ucore/literal.h"

namespace ucore {

class PropagationEngine;

enum class AttachMode { kPlain, kNotify };

// Receives events in trail order as literals are processed.
class EngineListener {
 public:
  virtual ~EngineListener() = default;
  // Objective atom `index` was assigned.
  virtual void OnObjectiveAssigned(int index, bool value, int level) = 0;
  // A clause X v Y became an active core: premises ~X, conclusions Y.
  virtual void OnCoreActivated(std::span<const Lit> premises,
                               std::span<const Lit> conclusions, bool learnt,
                               int level) = 0;
};

// Runs after clauses and linear constraints reach a fixpoint. Returns false
// and fills `conflict` on failure.
class FixpointPropagator {
 public:
  virtual ~FixpointPropagator() = default;
  virtual bool Propagate(PropagationEngine& engine,
                         std::vector<Lit>* conflict) = 0;
};

struct LinearTerm {
  int64_t coef = 0;
  int var = -1;
};

// enabler -> sum(coef * var) <= rhs, contingent on `premises`. The enabler is
// the constant true for ordinary constraints.
struct LinearProp {
  std::vector<LinearTerm> terms;
  int64_t rhs = 0;
  Lit enabler;
  std::vector<Lit> premises;
  bool enabled = true;
};

struct EngineStats {
  int64_t propagations = 0;
  int64_t learnt_clauses = 0;
  int64_t deleted_clauses = 0;
};

class PropagationEngine : public Trailed {
 public:
  static constexpr int kMaxLearnts = 10000;

  explicit PropagationEngine(DomainStore* store);
  PropagationEngine(const PropagationEngine&) = delete;
  PropagationEngine& operator=(const PropagationEngine&) = delete;

  DomainStore& store() { return store_; }
  const DomainStore& store() const { return store_; }

  void SetListener(EngineListener* listener) { listener_ = listener; }
  // Marks the positive literal of `atom` as objective literal `index`.
  void SetObjectiveAtom(Var atom, int index);
  bool IsObjectiveLiteral(Lit l) const;
  bool IsAux(Var v) const { return store_.info(v).kind == AtomKind::kAux; }

  // Attaches a clause at the current level, propagating it when unit.
  // Returns false on conflict, leaving the nogood in `conflict()`.
  // In notify mode the literals are split into Y (objective literals) and
  // X (the rest); `num_conclusions` > 0 instead takes the last
  // `num_conclusions` literals as Y.
  bool AddClause(std::vector<Lit> lits, AttachMode mode = AttachMode::kPlain,
                 bool learnt = false, bool pinned = false,
                 int num_conclusions = 0);
  int num_clauses() const { return static_cast<int>(clauses_.size()); }
  std::span<const Lit> clause(int id) const { return clauses_[id].lits; }

  int PostLinear(LinearProp prop);
  LinearProp& linear(int id) { return linears_[id]; }
  // Re-queues a linear constraint after its data changed.
  void TouchLinear(int id);

  void AddFixpointPropagator(FixpointPropagator* p) { fixpoints_.push_back(p); }

  // Assigns l with `explanation -> l`. Returns false on conflict and fills
  // `conflict` with the nogood explanation + ~l.
  bool Enqueue(Lit l, std::span<const Lit> explanation,
               std::vector<Lit>* conflict);

  // Returns false on conflict; the nogood is left in `conflict`.
  bool Propagate(std::vector<Lit>* conflict);
  const std::vector<Lit>& conflict() const { return root_conflict_; }

  // Appends the literals L of the reason L -> l for the true atom v.
  void Explain(Var v, std::vector<Lit>* out) const;

  void OnBackjump(int level) override;

  void BumpClause(int id);
  void DecayClauseActivity() { clause_inc_ /= 0.999; }
  int ReasonClause(Var v) const;

  const EngineStats& stats() const { return stats_; }

 private:
  struct Clause {
    std::vector<Lit> lits;
    bool learnt = false;
    bool pinned = false;
    bool deleted = false;
    double activity = 0;
  };
  struct Split {
    Lit aux;
    std::vector<Lit> x;
    std::vector<Lit> y;
    bool learnt = false;
  };
  struct BinWatch {
    Lit other;
    int clause;
  };

  int AttachPlain(std::vector<Lit> lits, bool learnt, bool pinned,
                  std::vector<Lit>* conflict);
  bool PropagateBinary(Lit p, std::vector<Lit>* conflict);
  bool PropagateLong(Lit p, std::vector<Lit>* conflict);
  bool PropagateLinear(int id, std::vector<Lit>* conflict);
  void Dequeued(Lit p);
  void ClauseConflict(const Clause& c, std::vector<Lit>* conflict) const;
  void ReduceLearnts();
  void EnsureAtoms();

  DomainStore& store_;
  EngineListener* listener_ = nullptr;
  std::vector<Clause> clauses_;
  std::vector<std::vector<int>> watches_;
  std::vector<std::vector<BinWatch>> bin_watches_;
  std::vector<LinearProp> linears_;
  std::vector<std::vector<int>> linear_watches_;
  std::vector<std::vector<int>> enabler_watches_;
  std::vector<int> linear_queue_;
  size_t linear_head_ = 0;
  std::vector<char> linear_queued_;
  std::vector<FixpointPropagator*> fixpoints_;
  std::vector<int> objective_index_;
  std::vector<int> split_of_aux_;
  std::vector<Split> splits_;
  std::vector<Lit> root_conflict_;
  std::vector<Lit> scratch_;
  size_t bin_head_ = 0;
  size_t long_head_ = 0;
  int num_learnts_ = 0;
  double clause_inc_ = 1;
  EngineStats stats_;
};

}  // namespace ucore

#endif  // UCORE_PROPAGATION_H_
