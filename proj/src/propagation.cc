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

#include "ucore/propagation.h"

#include <algorithm>
#include <map>
#include <utility>

namespace ucore {

PropagationEngine::PropagationEngine(DomainStore* store) : store_(*store) {
  store_.AddTrailed(this);
  EnsureAtoms();
}

void PropagationEngine::EnsureAtoms() {
  if (linear_watches_.size() < static_cast<size_t>(store_.num_model_vars())) {
    linear_watches_.resize(store_.num_model_vars());
  }
  const size_t atoms = static_cast<size_t>(store_.num_atoms());
  if (objective_index_.size() >= atoms) return;
  watches_.resize(2 * atoms);
  bin_watches_.resize(2 * atoms);
  enabler_watches_.resize(atoms);
  objective_index_.resize(atoms, -1);
  split_of_aux_.resize(atoms, -1);
}

void PropagationEngine::SetObjectiveAtom(Var atom, int index) {
  EnsureAtoms();
  objective_index_[atom] = index;
}

bool PropagationEngine::IsObjectiveLiteral(Lit l) const {
  return l.positive() && l.var() < static_cast<Var>(objective_index_.size()) &&
         objective_index_[l.var()] >= 0;
}

bool PropagationEngine::AddClause(std::vector<Lit> lits, AttachMode mode,
                                  bool learnt, bool pinned,
                                  int num_conclusions) {
  EnsureAtoms();
  root_conflict_.clear();
  if (!learnt && num_conclusions == 0 && store_.level() == 0) {
    std::vector<Lit> kept;
    for (Lit l : lits) {
      if (store_.IsTrue(l)) return true;
      if (store_.IsFalse(l)) continue;
      if (std::find(kept.begin(), kept.end(), ~l) != kept.end()) return true;
      if (std::find(kept.begin(), kept.end(), l) == kept.end()) {
        kept.push_back(l);
      }
    }
    lits = std::move(kept);
  }

  if (mode == AttachMode::kNotify) {
    std::vector<Lit> x, y;
    const int split_at = num_conclusions > 0
                             ? static_cast<int>(lits.size()) - num_conclusions
                             : -1;
    for (int i = 0; i < static_cast<int>(lits.size()); ++i) {
      const bool is_y =
          split_at >= 0 ? i >= split_at : IsObjectiveLiteral(lits[i]);
      (is_y ? y : x).push_back(lits[i]);
    }
    if (y.size() >= 2) {
      if (x.empty()) {
        if (listener_ != nullptr) {
          listener_->OnCoreActivated({}, y, learnt, store_.level());
        }
        return AttachPlain(std::move(y), learnt, true, &root_conflict_) >= 0;
      }
      const Var aux = store_.NewAuxVar();
      EnsureAtoms();
      split_of_aux_[aux] = static_cast<int>(splits_.size());
      splits_.push_back({Lit(aux, true), x, y, learnt});
      std::vector<Lit> head = y;
      head.insert(head.begin(), Lit(aux, false));
      if (AttachPlain(std::move(head), learnt, true, &root_conflict_) < 0) {
        return false;
      }
      x.push_back(Lit(aux, true));
      return AttachPlain(std::move(x), learnt, true, &root_conflict_) >= 0;
    }
  }
  return AttachPlain(std::move(lits), learnt, pinned, &root_conflict_) >= 0;
}

int PropagationEngine::AttachPlain(std::vector<Lit> lits, bool learnt,
                                   bool pinned, std::vector<Lit>* conflict) {
  const int id = static_cast<int>(clauses_.size());
  if (lits.empty()) {
    conflict->clear();
    return -1;
  }
  auto rank = [&](Lit l) -> int64_t {
    const LBool v = store_.Value(l);
    if (v == LBool::kTrue) return int64_t{1} << 40;
    if (v == LBool::kUndef) return int64_t{1} << 39;
    return store_.Level(l.var());
  };
  for (int k = 0; k < std::min<int>(2, static_cast<int>(lits.size())); ++k) {
    int best = k;
    for (int i = k + 1; i < static_cast<int>(lits.size()); ++i) {
      if (rank(lits[i]) > rank(lits[best])) best = i;
    }
    std::swap(lits[k], lits[best]);
  }
  Clause c;
  c.lits = std::move(lits);
  c.learnt = learnt;
  c.pinned = pinned;
  c.activity = clause_inc_;
  clauses_.push_back(std::move(c));
  const Clause& cl = clauses_.back();
  if (learnt) {
    ++num_learnts_;
    ++stats_.learnt_clauses;
  }
  if (cl.lits.size() == 2) {
    bin_watches_[cl.lits[0].index()].push_back({cl.lits[1], id});
    bin_watches_[cl.lits[1].index()].push_back({cl.lits[0], id});
  } else if (cl.lits.size() > 2) {
    watches_[cl.lits[0].index()].push_back(id);
    watches_[cl.lits[1].index()].push_back(id);
  }
  const Lit first = cl.lits[0];
  if (store_.IsFalse(first)) {
    ClauseConflict(cl, conflict);
    return -1;
  }
  if (store_.Value(first) == LBool::kUndef &&
      (cl.lits.size() == 1 || store_.IsFalse(cl.lits[1]))) {
    store_.Assign(first, {ReasonKind::kClause, id, 0});
    ++stats_.propagations;
  }
  if (num_learnts_ > kMaxLearnts) ReduceLearnts();
  return id;
}

void PropagationEngine::ClauseConflict(const Clause& c,
                                       std::vector<Lit>* conflict) const {
  conflict->clear();
  for (Lit l : c.lits) conflict->push_back(~l);
}

int PropagationEngine::PostLinear(LinearProp prop) {
  EnsureAtoms();
  std::map<int, size_t> position;
  std::vector<LinearTerm> merged;
  for (const LinearTerm& t : prop.terms) {
    auto [it, inserted] = position.emplace(t.var, merged.size());
    if (inserted) {
      merged.push_back(t);
    } else {
      merged[it->second].coef += t.coef;
    }
  }
  prop.terms = std::move(merged);
  if (!prop.enabler.valid()) prop.enabler = store_.True();
  const int id = static_cast<int>(linears_.size());
  for (const LinearTerm& t : prop.terms) linear_watches_[t.var].push_back(id);
  if (prop.enabler != store_.True()) {
    enabler_watches_[prop.enabler.var()].push_back(id);
  }
  linears_.push_back(std::move(prop));
  linear_queued_.push_back(0);
  TouchLinear(id);
  return id;
}

void PropagationEngine::TouchLinear(int id) {
  if (linear_queued_[id]) return;
  linear_queued_[id] = 1;
  linear_queue_.push_back(id);
}

bool PropagationEngine::Enqueue(Lit l, std::span<const Lit> explanation,
                                std::vector<Lit>* conflict) {
  const AssignResult r = store_.AssignExplained(l, explanation);
  if (r == AssignResult::kConflict) {
    conflict->assign(explanation.begin(), explanation.end());
    conflict->push_back(~l);
    return false;
  }
  if (r == AssignResult::kOk) ++stats_.propagations;
  return true;
}

void PropagationEngine::Dequeued(Lit p) {
  const Var v = p.var();
  const AtomInfo& info = store_.info(v);
  if (info.model_var >= 0) {
    for (int id : linear_watches_[info.model_var]) TouchLinear(id);
  }
  for (int id : enabler_watches_[v]) TouchLinear(id);
  if (listener_ == nullptr) return;
  if (objective_index_[v] >= 0) {
    listener_->OnObjectiveAssigned(objective_index_[v], p.positive(),
                                   store_.Level(v));
  }
  if (split_of_aux_[v] >= 0 && p.positive()) {
    const Split& s = splits_[split_of_aux_[v]];
    std::vector<Lit> premises;
    for (Lit x : s.x) {
      if (store_.Level(x.var()) > 0) premises.push_back(~x);
    }
    listener_->OnCoreActivated(premises, s.y, s.learnt, store_.Level(v));
  }
}

bool PropagationEngine::PropagateBinary(Lit p, std::vector<Lit>* conflict) {
  for (const BinWatch& w : bin_watches_[(~p).index()]) {
    const LBool v = store_.Value(w.other);
    if (v == LBool::kTrue) continue;
    if (v == LBool::kFalse) {
      conflict->assign({p, ~w.other});
      return false;
    }
    store_.Assign(w.other, {ReasonKind::kClause, w.clause, 0});
    ++stats_.propagations;
  }
  return true;
}

bool PropagationEngine::PropagateLong(Lit p, std::vector<Lit>* conflict) {
  const Lit false_lit = ~p;
  std::vector<int>& ws = watches_[false_lit.index()];
  size_t keep = 0;
  for (size_t i = 0; i < ws.size(); ++i) {
    const int id = ws[i];
    Clause& c = clauses_[id];
    if (c.deleted) continue;
    if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
    if (store_.IsTrue(c.lits[0])) {
      ws[keep++] = id;
      continue;
    }
    bool moved = false;
    for (size_t k = 2; k < c.lits.size(); ++k) {
      if (!store_.IsFalse(c.lits[k])) {
        std::swap(c.lits[1], c.lits[k]);
        watches_[c.lits[1].index()].push_back(id);
        moved = true;
        break;
      }
    }
    if (moved) continue;
    ws[keep++] = id;
    if (store_.IsFalse(c.lits[0])) {
      for (size_t j = i + 1; j < ws.size(); ++j) ws[keep++] = ws[j];
      ws.resize(keep);
      ClauseConflict(c, conflict);
      return false;
    }
    store_.Assign(c.lits[0], {ReasonKind::kClause, id, 0});
    ++stats_.propagations;
  }
  ws.resize(keep);
  return true;
}

bool PropagationEngine::PropagateLinear(int id, std::vector<Lit>* conflict) {
  const LinearProp& lp = linears_[id];
  if (!lp.enabled) return true;
  const LBool en = store_.Value(lp.enabler);
  if (en == LBool::kFalse) return true;

  __int128 minsum = 0;
  for (const LinearTerm& t : lp.terms) {
    if (t.coef > 0) {
      minsum += static_cast<__int128>(t.coef) * store_.Lb(t.var);
    } else if (t.coef < 0) {
      minsum += static_cast<__int128>(t.coef) * store_.Ub(t.var);
    }
  }
  const __int128 slack = static_cast<__int128>(lp.rhs) - minsum;

  // Collects bound literals of all terms but `skip`, leaving out terms whose
  // contribution above their root minimum fits into `budget`.
  auto build = [&](int skip, __int128 budget, std::vector<Lit>* out) {
    out->clear();
    for (int i = 0; i < static_cast<int>(lp.terms.size()); ++i) {
      const LinearTerm& t = lp.terms[i];
      if (i == skip || t.coef == 0) continue;
      if (t.coef > 0) {
        const int64_t lb = store_.Lb(t.var);
        const __int128 delta =
            static_cast<__int128>(t.coef) * (lb - store_.InitialLb(t.var));
        if (delta <= budget) {
          budget -= delta;
          continue;
        }
        out->push_back(store_.Ge(t.var, lb));
      } else {
        const int64_t ub = store_.Ub(t.var);
        const __int128 delta =
            static_cast<__int128>(-t.coef) * (store_.InitialUb(t.var) - ub);
        if (delta <= budget) {
          budget -= delta;
          continue;
        }
        out->push_back(store_.Le(t.var, ub));
      }
    }
    out->insert(out->end(), lp.premises.begin(), lp.premises.end());
    if (lp.enabler != store_.True() && en == LBool::kTrue) {
      out->push_back(lp.enabler);
    }
  };

  if (en == LBool::kUndef) {
    if (slack >= 0) return true;
    build(-1, -slack - 1, &scratch_);
    return Enqueue(~lp.enabler, scratch_, conflict);
  }
  if (slack < 0) {
    build(-1, -slack - 1, conflict);
    return false;
  }
  for (int i = 0; i < static_cast<int>(lp.terms.size()); ++i) {
    const LinearTerm& t = lp.terms[i];
    if (t.coef == 0) continue;
    const int64_t lb = store_.Lb(t.var);
    const int64_t ub = store_.Ub(t.var);
    if (t.coef > 0) {
      const __int128 a = t.coef;
      if (static_cast<__int128>(ub - lb) * a <= slack) continue;
      const int64_t new_ub = lb + static_cast<int64_t>(slack / a);
      const __int128 budget = minsum - a * lb + a * (new_ub + 1) - lp.rhs - 1;
      build(i, budget, &scratch_);
      if (!Enqueue(store_.Le(t.var, new_ub), scratch_, conflict)) return false;
    } else {
      const __int128 a = t.coef;
      if (static_cast<__int128>(ub - lb) * -a <= slack) continue;
      const int64_t new_lb = ub - static_cast<int64_t>(slack / -a);
      const __int128 budget = minsum - a * ub + a * (new_lb - 1) - lp.rhs - 1;
      build(i, budget, &scratch_);
      if (!Enqueue(store_.Ge(t.var, new_lb), scratch_, conflict)) return false;
    }
  }
  return true;
}

bool PropagationEngine::Propagate(std::vector<Lit>* conflict) {
  EnsureAtoms();
  const std::vector<Lit>& trail = store_.trail();
  while (true) {
    while (bin_head_ < trail.size()) {
      const Lit p = trail[bin_head_++];
      Dequeued(p);
      if (!PropagateBinary(p, conflict)) return false;
    }
    if (long_head_ < trail.size()) {
      if (!PropagateLong(trail[long_head_++], conflict)) return false;
      continue;
    }
    if (linear_head_ < linear_queue_.size()) {
      const int id = linear_queue_[linear_head_++];
      linear_queued_[id] = 0;
      if (linear_head_ == linear_queue_.size()) {
        linear_queue_.clear();
        linear_head_ = 0;
      }
      if (!PropagateLinear(id, conflict)) return false;
      continue;
    }
    bool grew = false;
    for (FixpointPropagator* fp : fixpoints_) {
      const size_t before = trail.size();
      if (!fp->Propagate(*this, conflict)) return false;
      if (trail.size() > before || linear_head_ < linear_queue_.size()) {
        grew = true;
        break;
      }
    }
    if (!grew) return true;
  }
}

void PropagationEngine::Explain(Var v, std::vector<Lit>* out) const {
  const Reason& r = store_.reason(v);
  if (r.kind == ReasonKind::kClause) {
    for (Lit l : clauses_[r.index].lits) {
      if (l.var() != v) out->push_back(~l);
    }
  } else if (r.kind == ReasonKind::kExplained) {
    const std::span<const Lit> e = store_.Explanation(r);
    out->insert(out->end(), e.begin(), e.end());
  }
}

void PropagationEngine::OnBackjump(int /*level*/) {
  const size_t size = store_.trail().size();
  bin_head_ = std::min(bin_head_, size);
  long_head_ = std::min(long_head_, size);
  for (size_t i = linear_head_; i < linear_queue_.size(); ++i) {
    linear_queued_[linear_queue_[i]] = 0;
  }
  linear_queue_.clear();
  linear_head_ = 0;
}

int PropagationEngine::ReasonClause(Var v) const {
  const Reason& r = store_.reason(v);
  return r.kind == ReasonKind::kClause ? r.index : -1;
}

void PropagationEngine::BumpClause(int id) {
  Clause& c = clauses_[id];
  if (!c.learnt) return;
  c.activity += clause_inc_;
  if (c.activity > 1e20) {
    for (Clause& other : clauses_) other.activity *= 1e-20;
    clause_inc_ *= 1e-20;
  }
}

void PropagationEngine::ReduceLearnts() {
  std::vector<int> candidates;
  for (int id = 0; id < static_cast<int>(clauses_.size()); ++id) {
    const Clause& c = clauses_[id];
    if (!c.learnt || c.pinned || c.deleted || c.lits.size() <= 2) continue;
    const Lit first = c.lits[0];
    if (store_.IsTrue(first) && ReasonClause(first.var()) == id) continue;
    candidates.push_back(id);
  }
  std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    return clauses_[a].activity < clauses_[b].activity;
  });
  const size_t remove = candidates.size() / 2;
  for (size_t i = 0; i < remove; ++i) {
    clauses_[candidates[i]].deleted = true;
    --num_learnts_;
    ++stats_.deleted_clauses;
  }
}

}  // namespace ucore
