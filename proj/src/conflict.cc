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

#include <algorithm>
#include <stdexcept>

namespace ucore {

ConflictAnalyzer::ConflictAnalyzer(PropagationEngine* engine)
    : engine_(*engine), store_(engine->store()) {}

GeneralizedNogood ConflictAnalyzer::Analyze(std::span<const Lit> nogood) {
  seen_.resize(store_.num_atoms(), 0);
  std::vector<Lit> n;
  GeneralizedNogood g;
  for (Lit l : nogood) {
    const Var v = l.var();
    if (store_.Level(v) <= 0 || seen_[v]) continue;
    seen_[v] = 1;
    n.push_back(l);
    g.conflict_level = std::max(g.conflict_level, store_.Level(v));
  }
  if (n.empty()) throw std::logic_error("conflict at level 0");
  const int cl = g.conflict_level;
  int count = 0;
  for (Lit l : n) count += store_.Level(l.var()) == cl ? 1 : 0;

  const std::vector<Lit>& trail = store_.trail();
  const int start = store_.LevelStart(cl);
  const int end = cl >= store_.level() ? static_cast<int>(trail.size())
                                       : store_.LevelStart(cl + 1);
  for (int i = end - 1; i >= start && count > 1; --i) {
    const Var v = trail[i].var();
    if (!seen_[v]) continue;
    const ReasonKind kind = store_.reason(v).kind;
    if (kind == ReasonKind::kDecision ||
        kind == ReasonKind::kMultipleDecision) {
      continue;
    }
    seen_[v] = 0;
    --count;
    if (bump_) bump_(v);
    const int clause = engine_.ReasonClause(v);
    if (clause >= 0) engine_.BumpClause(clause);
    reasons_.clear();
    engine_.Explain(v, &reasons_);
    for (Lit q : reasons_) {
      const Var qv = q.var();
      if (store_.Level(qv) <= 0 || seen_[qv]) continue;
      seen_[qv] = 1;
      n.push_back(q);
      if (store_.Level(qv) == cl) ++count;
    }
  }
  for (Lit l : n) {
    if (!seen_[l.var()]) continue;
    seen_[l.var()] = 0;
    if (bump_) bump_(l.var());
    if (store_.Level(l.var()) == cl) {
      g.conclusions.push_back(~l);
    } else {
      g.premises.push_back(l);
    }
  }
  return g;
}

int ConflictAnalyzer::BackjumpLevel(const GeneralizedNogood& g) const {
  int level = 0;
  for (Lit l : g.premises) level = std::max(level, store_.Level(l.var()));
  return level;
}

void ConflictAnalyzer::Minimize(GeneralizedNogood* g) {
  seen_.resize(store_.num_atoms(), 0);
  for (Lit l : g->premises) seen_[l.var()] = 1;
  for (Lit l : g->conclusions) seen_[l.var()] = 1;
  std::vector<Lit> kept;
  for (Lit l : g->premises) {
    const ReasonKind kind = store_.reason(l.var()).kind;
    bool redundant =
        kind == ReasonKind::kClause || kind == ReasonKind::kExplained;
    if (redundant) {
      reasons_.clear();
      engine_.Explain(l.var(), &reasons_);
      for (Lit q : reasons_) {
        if (store_.Level(q.var()) > 0 && !seen_[q.var()]) {
          redundant = false;
          break;
        }
      }
    }
    if (!redundant) kept.push_back(l);
  }
  for (Lit l : g->premises) seen_[l.var()] = 0;
  for (Lit l : g->conclusions) seen_[l.var()] = 0;
  g->premises = std::move(kept);
}

void ConflictAnalyzer::ExpandAux(std::vector<Lit>* lits) const {
  std::vector<Lit> out;
  std::vector<Lit> pending(lits->rbegin(), lits->rend());
  std::vector<char> done(store_.num_atoms(), 0);
  while (!pending.empty()) {
    const Lit l = pending.back();
    pending.pop_back();
    if (done[l.var()] || store_.Level(l.var()) <= 0) continue;
    done[l.var()] = 1;
    if (!engine_.IsAux(l.var())) {
      out.push_back(l);
      continue;
    }
    std::vector<Lit> reason;
    engine_.Explain(l.var(), &reason);
    for (auto it = reason.rbegin(); it != reason.rend(); ++it) {
      pending.push_back(*it);
    }
  }
  *lits = std::move(out);
}

void ConflictAnalyzer::Learn(
    const GeneralizedNogood& g, SearchMode mode,
    const std::function<void(const GeneralizedNogood&)>& register_core) {
  std::vector<Lit> lits;
  if (g.conclusions.size() == 1) {
    lits.push_back(g.conclusions[0]);
    for (Lit l : g.premises) lits.push_back(~l);
    engine_.AddClause(std::move(lits), AttachMode::kPlain, true);
    return;
  }
  if (mode == SearchMode::kNestedNotify) {
    for (Lit l : g.premises) lits.push_back(~l);
    lits.insert(lits.end(), g.conclusions.begin(), g.conclusions.end());
    engine_.AddClause(std::move(lits), AttachMode::kNotify, true, true,
                      static_cast<int>(g.conclusions.size()));
    return;
  }
  register_core(g);
}

}  // namespace ucore
