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

// Lower-bound strengthening of the objective constraint c^T y < u from
// unsatisfiable cores. A core over objective indices G is read as the
// inequality sum_{j in G} y_j >= 1.
//
// DisjointStrengthen() adds alpha_i times each core inequality in turn, with
// alpha_i the smallest working coefficient among the core's members.
// IncrementalDisjoint keeps that result equal to a from-scratch computation
// over the active cores of a registry while cores are added, deactivated,
// reactivated and removed. LpBound is a fixpoint propagator that bounds the
// objective with the covering LP over all unsatisfied cores and explains its
// inferences from the dual solution.

#ifndef UCORE_BOUNDING_H_
#define UCORE_BOUNDING_H_

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ucore/cores.h"
#include "ucore/lp.h"
#include "ucore/propagation.h"

namespace ucore {

// sum_j coefs[j] * y_j < bound.
struct PbConstraint {
  std::vector<int64_t> coefs;
  int64_t bound = 0;
  friend bool operator==(const PbConstraint&, const PbConstraint&) = default;
};

PbConstraint DisjointStrengthen(const PbConstraint& base,
                                const std::vector<std::vector<int>>& cores,
                                std::vector<int64_t>* alphas = nullptr);

// Objective lower bounds implied by a core set: sum of alpha for Disjoint,
// the exact covering-LP optimum for the LP method.
int64_t DisjointCoreBound(std::span<const int64_t> weights,
                          const std::vector<std::vector<int>>& cores);
mpq_class LpCoreBound(std::span<const int64_t> weights,
                      const std::vector<std::vector<int>>& cores);

class IncrementalDisjoint : public CoreListener {
 public:
  explicit IncrementalDisjoint(const CoreRegistry* registry);

  // Rebuilds against a new base constraint.
  void Reset(PbConstraint base);
  bool has_base() const { return has_base_; }
  const PbConstraint& base() const { return base_; }
  const PbConstraint& current() const { return current_; }
  // Core ids in elimination order with their multipliers.
  std::vector<std::pair<int, int64_t>> Eliminations() const;
  // Premises of every stacked core with a positive multiplier.
  std::vector<Lit> Premises() const;
  int64_t version() const { return version_; }

  void OnCoreAdded(int id) override { Repair(id); }
  void OnCoreRemoved(int id) override { Repair(id); }
  void OnCoreDeactivated(int id) override { Repair(id); }
  void OnCoreReactivated(int id) override { Repair(id); }

 private:
  struct Entry {
    int core;
    int64_t alpha;
    PbConstraint before;
  };

  // Pops every elimination of a core >= `from` and re-eliminates the active
  // cores from `from` onwards in registration order.
  void Repair(int from);
  void Eliminate(int core);

  const CoreRegistry& registry_;
  bool has_base_ = false;
  PbConstraint base_;
  PbConstraint current_;
  std::vector<Entry> stack_;
  int64_t version_ = 0;
};

struct LpInference {
  bool fathom = false;
  // The literal set false by a prune.
  Lit pruned;
  // True literals whose conjunction, with c^T y <= u - 1, implies the
  // inference.
  std::vector<Lit> explanation;
  mpq_class lower_bound;
  std::optional<int64_t> upper_bound;
};

class LpBound : public FixpointPropagator, public CoreListener, public Trailed {
 public:
  LpBound(PropagationEngine* engine, const CoreRegistry* registry,
          std::vector<Lit> objective, std::vector<int64_t> weights);

  void SetUpperBound(int64_t u);
  void MarkDirty() { dirty_ = true; }
  void SetInferenceCallback(std::function<void(const LpInference&)> cb) {
    on_inference_ = std::move(cb);
  }

  bool Propagate(PropagationEngine& engine,
                 std::vector<Lit>* conflict) override;

  void OnCoreAdded(int) override { dirty_ = true; }
  void OnCoreRemoved(int) override { dirty_ = true; }
  void OnCoreDeactivated(int) override { dirty_ = true; }
  void OnCoreReactivated(int) override { dirty_ = true; }
  void OnBackjump(int) override { dirty_ = true; }

  int64_t calls() const { return calls_; }
  const mpq_class& last_bound() const { return last_bound_; }

 private:
  DomainStore& store_;
  const CoreRegistry& registry_;
  std::vector<Lit> objective_;
  std::vector<int64_t> weights_;
  std::optional<int64_t> upper_;
  std::function<void(const LpInference&)> on_inference_;
  bool dirty_ = true;
  int64_t calls_ = 0;
  mpq_class last_bound_;
};

}  // namespace ucore

#endif  // UCORE_BOUNDING_H_
