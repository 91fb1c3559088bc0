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

#include "ucore/search.h"

#include <chrono>
#include <limits>
#include <memory>
#include <random>
#include <stdexcept>

#include "ucore/bounding.h"
#include "ucore/conflict.h"
#include "ucore/domains.h"
#include "ucore/propagation.h"

namespace ucore {

std::string_view SearchModeName(SearchMode mode) {
  switch (mode) {
    case SearchMode::kBranchAndBound:
      return "bb";
    case SearchMode::kBasic:
      return "basic";
    case SearchMode::kNested:
      return "nested";
    case SearchMode::kNestedNotify:
      return "nested-notify";
  }
  return "?";
}

std::string_view BoundingModeName(BoundingMode mode) {
  switch (mode) {
    case BoundingMode::kStandard:
      return "std";
    case BoundingMode::kDisjoint:
      return "disjoint";
    case BoundingMode::kLp:
      return "lp";
  }
  return "?";
}

std::optional<SearchMode> ParseSearchMode(std::string_view name) {
  for (SearchMode m : {SearchMode::kBranchAndBound, SearchMode::kBasic,
                       SearchMode::kNested, SearchMode::kNestedNotify}) {
    if (SearchModeName(m) == name) return m;
  }
  return std::nullopt;
}

std::optional<BoundingMode> ParseBoundingMode(std::string_view name) {
  for (BoundingMode m :
       {BoundingMode::kStandard, BoundingMode::kDisjoint, BoundingMode::kLp}) {
    if (BoundingModeName(m) == name) return m;
  }
  return std::nullopt;
}

namespace {

// Max-activity heap over model variables; ties go to the lowest index.
class VarHeap {
 public:
  explicit VarHeap(const std::vector<double>* activity)
      : activity_(*activity) {}

  bool empty() const { return heap_.empty(); }
  int top() const { return heap_[0]; }
  bool contains(int v) const {
    return v < static_cast<int>(pos_.size()) && pos_[v] >= 0;
  }

  void Insert(int v) {
    if (v >= static_cast<int>(pos_.size())) pos_.resize(v + 1, -1);
    if (pos_[v] >= 0) return;
    pos_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    Up(pos_[v]);
  }

  void Pop() {
    const int last = heap_.back();
    pos_[heap_[0]] = -1;
    heap_.pop_back();
    if (heap_.empty()) return;
    heap_[0] = last;
    pos_[last] = 0;
    Down(0);
  }

  void Increased(int v) {
    if (contains(v)) Up(pos_[v]);
  }

 private:
  bool Before(int a, int b) const {
    return activity_[a] > activity_[b] ||
           (activity_[a] == activity_[b] && a < b);
  }
  void Up(int i) {
    const int v = heap_[i];
    while (i > 0) {
      const int p = (i - 1) / 2;
      if (!Before(v, heap_[p])) break;
      heap_[i] = heap_[p];
      pos_[heap_[i]] = i;
      i = p;
    }
    heap_[i] = v;
    pos_[v] = i;
  }
  void Down(int i) {
    const int v = heap_[i];
    const int n = static_cast<int>(heap_.size());
    while (true) {
      int c = 2 * i + 1;
      if (c >= n) break;
      if (c + 1 < n && Before(heap_[c + 1], heap_[c])) ++c;
      if (!Before(heap_[c], v)) break;
      heap_[i] = heap_[c];
      pos_[heap_[i]] = i;
      i = c;
    }
    heap_[i] = v;
    pos_[v] = i;
  }

  const std::vector<double>& activity_;
  std::vector<int> heap_;
  std::vector<int> pos_;
};

class Search : public EngineListener, public CoreListener, public Trailed {
 public:
  Search(const Problem& problem, const SolverConfig& config)
      : problem_(problem),
        config_(config),
        engine_(&store_),
        analyzer_(&engine_),
        heap_(&activity_) {}

  SolveResult Run();

  void OnObjectiveAssigned(int index, bool value, int level) override;
  void OnCoreActivated(std::span<const Lit> premises,
                       std::span<const Lit> conclusions, bool learnt,
                       int level) override;

  void OnCoreAdded(int) override { SyncDisjoint(); }
  void OnCoreRemoved(int) override { SyncDisjoint(); }
  void OnCoreDeactivated(int id) override;
  void OnCoreReactivated(int) override { SyncDisjoint(); }

  void OnBackjump(int level) override {
    if (registry_) registry_->BackjumpTo(level);
  }

 private:
  bool Compile();
  bool AddClause(std::vector<Literal> lits, std::vector<Lit> extra);
  void PostLinear(const LinearConstraint& c, Lit enabler);
  bool LimitReached(SolveResult* result);
  // Returns false once the search space is exhausted.
  bool HandleConflict(const std::vector<Lit>& nogood);
  bool Decide();
  void RecordIncumbent();
  void Backjump(int level);
  void Bump(Var atom);
  void SyncDisjoint();
  int RegisterCore(std::vector<Lit> premises, std::span<const Lit> conclusions,
                   int level, CoreSource source);
  bool IsMultipleLevel(int level) const;
  std::vector<Literal> ToLiterals(std::span<const Lit> lits) const;
  void Log(SolverEvent e) {
    if (config_.events != nullptr) config_.events->push_back(std::move(e));
  }

  const Problem& problem_;
  const SolverConfig& config_;
  DomainStore store_;
  PropagationEngine engine_;
  ConflictAnalyzer analyzer_;
  std::unique_ptr<CoreRegistry> registry_;
  std::unique_ptr<IncrementalDisjoint> disjoint_;
  std::unique_ptr<LpBound> lp_;
  std::vector<Lit> objective_;
  std::vector<int64_t> weights_;
  std::vector<int> objective_of_var_;
  int base_linear_ = -1;
  int strong_linear_ = -1;
  int64_t synced_version_ = -1;

  std::vector<double> activity_;
  double var_inc_ = 1;
  VarHeap heap_;

  std::optional<std::vector<int64_t>> best_;
  int64_t best_cost_ = 0;
  SolverStats stats_;
  std::chrono::steady_clock::time_point start_;
};

bool Search::AddClause(std::vector<Literal> lits, std::vector<Lit> extra) {
  std::vector<Lit> out = std::move(extra);
  for (const Literal& l : lits) {
    if (l.kind == LitKind::kNeq && !store_.HasEqAtoms(l.var) &&
        l.value > store_.InitialLb(l.var) &&
        l.value < store_.InitialUb(l.var)) {
      out.push_back(~store_.Ge(l.var, l.value));
      out.push_back(~store_.Le(l.var, l.value));
      continue;
    }
    out.push_back(store_.LitFor(l));
  }
  const AttachMode mode = config_.mode == SearchMode::kNestedNotify
                              ? AttachMode::kNotify
                              : AttachMode::kPlain;
  return engine_.AddClause(std::move(out), mode);
}

void Search::PostLinear(const LinearConstraint& c, Lit enabler) {
  auto post = [&](int64_t sign) {
    LinearProp p;
    for (const Term& t : c.terms) p.terms.push_back({sign * t.coef, t.var});
    p.rhs = sign * c.rhs;
    p.enabler = enabler;
    engine_.PostLinear(std::move(p));
  };
  if (c.rel != Relation::kGe) post(1);
  if (c.rel != Relation::kLe) post(-1);
}

bool Search::Compile() {
  for (const Variable& v : problem_.vars) {
    const int x =
        v.is_bool ? store_.NewBoolVar() : store_.NewIntVar(v.lo, v.hi);
    for (std::vector<Lit>& c : store_.ChannelClauses(x)) {
      engine_.AddClause(std::move(c));
    }
  }
  const int nv = store_.num_model_vars();
  activity_.assign(nv, 0.0);
  if (config_.seed != 0) {
    std::mt19937_64 rng(config_.seed);
    std::uniform_real_distribution<double> jitter(0.0, 1e-5);
    for (double& a : activity_) a = jitter(rng);
  }
  for (int x = 0; x < nv; ++x) heap_.Insert(x);

  objective_of_var_.assign(nv, -1);
  for (size_t k = 0; k < problem_.objective.size(); ++k) {
    const ObjectiveTerm& t = problem_.objective[k];
    const Lit y = store_.Ge(t.var, 1);
    objective_.push_back(y);
    weights_.push_back(static_cast<int64_t>(t.weight));
    objective_of_var_[t.var] = static_cast<int>(k);
    engine_.SetObjectiveAtom(y.var(), static_cast<int>(k));
  }
  engine_.SetListener(this);
  analyzer_.SetBumpCallback([this](Var v) { Bump(v); });
  const int n = static_cast<int>(objective_.size());
  if (config_.mode != SearchMode::kBranchAndBound) {
    registry_ = std::make_unique<CoreRegistry>(n, config_.mode);
    store_.AddTrailed(this);
    if (config_.bounding == BoundingMode::kDisjoint) {
      disjoint_ = std::make_unique<IncrementalDisjoint>(registry_.get());
      registry_->AddListener(disjoint_.get());
    }
    if (config_.bounding == BoundingMode::kLp) {
      lp_ = std::make_unique<LpBound>(&engine_, registry_.get(), objective_,
                                      weights_);
      registry_->AddListener(lp_.get());
      store_.AddTrailed(lp_.get());
      engine_.AddFixpointPropagator(lp_.get());
      lp_->SetInferenceCallback([this](const LpInference& inf) {
        if (inf.fathom) {
          ++stats_.lp_fathoms;
        } else {
          ++stats_.lp_prunes;
        }
        SolverEvent e;
        e.kind = EventKind::kLpInference;
        e.level = store_.level();
        e.lits = ToLiterals(inf.explanation);
        if (!inf.fathom) e.pruned = store_.ToLiteral(inf.pruned);
        e.upper_bound = inf.upper_bound;
        Log(std::move(e));
      });
    }
    registry_->AddListener(this);
  }

  LinearProp base;
  for (int k = 0; k < n; ++k) {
    base.terms.push_back({weights_[k], problem_.objective[k].var});
  }
  base.rhs = std::numeric_limits<int64_t>::max() / 2;
  base.enabler = store_.True();
  base.enabled = false;
  if (disjoint_) strong_linear_ = engine_.PostLinear(base);
  base_linear_ = engine_.PostLinear(std::move(base));

  for (const Constraint& c : problem_.hard) {
    if (const auto* clause = std::get_if<ClauseConstraint>(&c)) {
      if (!AddClause(clause->lits, {})) return false;
    } else if (const auto* lin = std::get_if<LinearConstraint>(&c)) {
      PostLinear(*lin, store_.True());
    } else {
      const auto& h = std::get<HalfReified>(c);
      const Lit guard = store_.LitFor(h.guard);
      if (const auto* inner = std::get_if<ClauseConstraint>(&h.inner)) {
        if (!AddClause(inner->lits, {~guard})) return false;
      } else {
        PostLinear(std::get<LinearConstraint>(h.inner), guard);
      }
    }
  }
  return true;
}

std::vector<Literal> Search::ToLiterals(std::span<const Lit> lits) const {
  std::vector<Literal> out;
  for (Lit l : lits) out.push_back(store_.ToLiteral(l));
  return out;
}

bool Search::IsMultipleLevel(int level) const {
  if (level <= 0) return false;
  const Lit first = store_.trail()[store_.LevelStart(level)];
  return store_.reason(first.var()).kind == ReasonKind::kMultipleDecision;
}

void Search::OnObjectiveAssigned(int index, bool value, int level) {
  if (value && registry_) registry_->OnObjectiveTrue(index, level);
  if (lp_) lp_->MarkDirty();
}

int Search::RegisterCore(std::vector<Lit> premises,
                         std::span<const Lit> conclusions, int level,
                         CoreSource source) {
  std::vector<int> members;
  std::vector<Lit> members_lits;
  for (Lit c : conclusions) {
    const AtomInfo& a = store_.info(c.var());
    if (!c.positive() || a.kind == AtomKind::kAux ||
        objective_of_var_[a.model_var] < 0) {
      throw std::logic_error("core conclusion is not an objective literal");
    }
    members.push_back(objective_of_var_[a.model_var]);
    members_lits.push_back(c);
  }
  SolverEvent e;
  e.kind = EventKind::kCoreFound;
  e.level = level;
  e.lits = ToLiterals(premises);
  e.conclusions = ToLiterals(members_lits);
  e.source = source;
  e.upper_bound = best_ ? std::optional<int64_t>(best_cost_) : std::nullopt;
  const int id = registry_->Register(
      std::move(premises), std::move(members), level, source,
      [this](int i) { return store_.IsTrue(objective_[i]); });
  e.core_id = id;
  ++stats_.cores;
  Log(std::move(e));
  return id;
}

void Search::OnCoreActivated(std::span<const Lit> premises,
                             std::span<const Lit> conclusions, bool learnt,
                             int level) {
  if (!registry_) return;
  std::vector<Lit> p(premises.begin(), premises.end());
  analyzer_.ExpandAux(&p);
  CoreSource source = CoreSource::kNotification;
  if (learnt) {
    source = CoreSource::kConflict;
  } else if (p.empty() && level == 0) {
    source = CoreSource::kInput;
  }
  RegisterCore(std::move(p), conclusions, level, source);
}

void Search::OnCoreDeactivated(int id) {
  ++stats_.core_deactivations;
  SolverEvent e;
  e.kind = EventKind::kCoreDeactivated;
  e.level = store_.level();
  e.core_id = id;
  Log(std::move(e));
  SyncDisjoint();
}

void Search::SyncDisjoint() {
  if (!disjoint_ || !disjoint_->has_base()) return;
  if (disjoint_->version() == synced_version_) return;
  synced_version_ = disjoint_->version();
  LinearProp& p = engine_.linear(strong_linear_);
  const PbConstraint& c = disjoint_->current();
  for (size_t k = 0; k < p.terms.size(); ++k) p.terms[k].coef = c.coefs[k];
  p.rhs = c.bound - 1;
  p.premises = disjoint_->Premises();
  p.enabled = true;
  engine_.TouchLinear(strong_linear_);
}

void Search::Bump(Var atom) {
  const AtomInfo& a = store_.info(atom);
  if (a.kind == AtomKind::kConstant || a.kind == AtomKind::kAux) return;
  double& act = activity_[a.model_var];
  act += var_inc_;
  if (act > 1e100) {
    for (double& x : activity_) x *= 1e-100;
    var_inc_ *= 1e-100;
  }
  heap_.Increased(a.model_var);
}

void Search::Backjump(int level) {
  if (level >= store_.level()) return;
  const std::vector<Lit>& trail = store_.trail();
  for (size_t i = store_.LevelStart(level + 1); i < trail.size(); ++i) {
    const AtomInfo& a = store_.info(trail[i].var());
    if (a.kind == AtomKind::kGe || a.kind == AtomKind::kEq) {
      heap_.Insert(a.model_var);
    }
  }
  store_.Backjump(level);
}

bool Search::HandleConflict(const std::vector<Lit>& nogood) {
  bool above_root = false;
  for (Lit l : nogood) above_root |= store_.Level(l.var()) > 0;
  if (!above_root) return false;
  ++stats_.conflicts;
  GeneralizedNogood g = analyzer_.Analyze(nogood);
  SolverEvent e;
  e.kind = EventKind::kConflict;
  e.level = g.conflict_level;
  e.multiple = IsMultipleLevel(g.conflict_level);
  Log(std::move(e));
  if (g.conclusions.size() == 1) {
    analyzer_.Minimize(&g);
  } else {
    analyzer_.ExpandAux(&g.premises);
  }
  Backjump(analyzer_.BackjumpLevel(g));
  analyzer_.Learn(g, config_.mode, [this](const GeneralizedNogood& core) {
    RegisterCore(core.premises, core.conclusions, store_.level(),
                 CoreSource::kConflict);
  });
  var_inc_ /= config_.vsids_decay;
  engine_.DecayClauseActivity();
  return true;
}

bool Search::Decide() {
  if (registry_) {
    std::vector<int> cands = registry_->Candidates(
        store_.level(),
        [this](int i) { return store_.Value(objective_[i]) == LBool::kUndef; });
    if (!cands.empty()) {
      store_.PushLevel();
      SolverEvent e;
      e.kind = EventKind::kMultipleDecision;
      e.level = store_.level();
      for (int i : cands) {
        store_.Assign(~objective_[i], {ReasonKind::kMultipleDecision, 0, 0});
        e.lits.push_back(store_.ToLiteral(~objective_[i]));
      }
      ++stats_.multiple_decisions;
      Log(std::move(e));
      return true;
    }
  }
  while (!heap_.empty() && store_.Fixed(heap_.top())) heap_.Pop();
  if (heap_.empty()) return false;
  const int x = heap_.top();
  Lit lit;
  if (store_.IsBool(x)) {
    const int k = objective_of_var_[x];
    const bool true_first = k >= 0 && registry_ &&
                            config_.mode != SearchMode::kBasic &&
                            registry_->count(k) > 0;
    lit = true_first ? store_.Ge(x, 1) : store_.Le(x, 0);
  } else {
    const int64_t lb = store_.Lb(x);
    lit = store_.Le(x, lb + (store_.Ub(x) - lb) / 2);
  }
  store_.PushLevel();
  store_.Assign(lit, {ReasonKind::kDecision, 0, 0});
  ++stats_.decisions;
  return true;
}

void Search::RecordIncumbent() {
  std::vector<int64_t> values(problem_.vars.size());
  for (size_t i = 0; i < values.size(); ++i) {
    values[i] = store_.Lb(static_cast<int>(i));
  }
  const Evaluation ev = Evaluate(problem_, values);
  if (!ev.feasible)
    throw std::logic_error("solver produced an infeasible assignment");
  const int64_t cost = static_cast<int64_t>(ev.cost);
  if (best_ && cost >= best_cost_) {
    throw std::logic_error("solver produced a non-improving assignment");
  }
  best_ = std::move(values);
  best_cost_ = cost;
  ++stats_.incumbents;
  if (!stats_.first_incumbent_cost) {
    stats_.first_incumbent_cost = cost;
    stats_.conflicts_to_first_incumbent = stats_.conflicts;
  }
  SolverEvent e;
  e.kind = EventKind::kIncumbent;
  e.level = store_.level();
  e.upper_bound = cost;
  Log(std::move(e));
  if (config_.on_incumbent) config_.on_incumbent(*best_, cost);

  Backjump(0);
  LinearProp& base = engine_.linear(base_linear_);
  base.rhs = cost - 1;
  base.enabled = true;
  engine_.TouchLinear(base_linear_);
  if (disjoint_) {
    disjoint_->Reset({weights_, cost});
    SyncDisjoint();
  }
  if (lp_) lp_->SetUpperBound(cost);
}

bool Search::LimitReached(SolveResult* result) {
  if (config_.cancel != nullptr && config_.cancel->load()) {
    result->limit = "cancelled";
    return true;
  }
  if (config_.conflict_limit && stats_.conflicts >= *config_.conflict_limit) {
    result->limit = "conflicts";
    return true;
  }
  if (config_.time_limit) {
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start_;
    if (elapsed.count() >= *config_.time_limit) {
      result->limit = "time";
      return true;
    }
  }
  return false;
}

SolveResult Search::Run() {
  start_ = std::chrono::steady_clock::now();
  SolveResult result;
  bool exhausted = !Compile();
  std::vector<Lit> conflict;
  while (!exhausted) {
    if (LimitReached(&result)) break;
    conflict.clear();
    if (!engine_.Propagate(&conflict)) {
      exhausted = !HandleConflict(conflict);
      continue;
    }
    if (Decide()) continue;
    RecordIncumbent();
    if (best_cost_ == 0) exhausted = true;
  }
  if (exhausted) {
    result.status = best_ ? SolveResult::kOptimal : SolveResult::kInfeasible;
  }
  result.assignment = best_;
  result.cost = best_cost_;
  stats_.propagations = engine_.stats().propagations;
  stats_.learnt_clauses = engine_.stats().learnt_clauses;
  if (lp_) stats_.lp_calls = lp_->calls();
  stats_.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
          .count();
  result.stats = stats_;
  return result;
}

}  // namespace

SolveResult Solve(const Problem& problem, const SolverConfig& config) {
  Search search(problem, config);
  return search.Run();
}

}  // namespace ucore
