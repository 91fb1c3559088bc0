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

// Branch-and-bound search with clause learning, optionally driven by
// unsatisfiable cores. In the core-guided modes the solver sets objective
// variables false with multiple decisions; a conflict at such a level yields
// a generalized nogood whose conclusions form a core.

#ifndef UCORE_SEARCH_H_
#define UCORE_SEARCH_H_

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ucore/cores.h"
#include "ucore/literal.h"
#include "ucore/model.h"

namespace ucore {

enum class BoundingMode { kStandard, kDisjoint, kLp };

std::string_view SearchModeName(SearchMode mode);
std::string_view BoundingModeName(BoundingMode mode);
std::optional<SearchMode> ParseSearchMode(std::string_view name);
std::optional<BoundingMode> ParseBoundingMode(std::string_view name);

enum class EventKind {
  kMultipleDecision,
  kConflict,
  kCoreFound,
  kCoreDeactivated,
  kIncumbent,
  kLpInference,
};

struct SolverEvent {
  EventKind kind = EventKind::kConflict;
  int level = 0;
  // kConflict: whether the conflict level is a multiple-decision level.
  bool multiple = false;
  // kMultipleDecision: the literals set. kCoreFound: premises.
  // kLpInference: the explanation.
  std::vector<Literal> lits;
  // kCoreFound: the core's objective literals.
  std::vector<Literal> conclusions;
  CoreSource source = CoreSource::kConflict;
  int core_id = -1;
  // kLpInference: the literal pruned, absent for a fathom.
  std::optional<Literal> pruned;
  // Upper bound in force; the cost for kIncumbent.
  std::optional<int64_t> upper_bound;
};

struct SolverConfig {
  SearchMode mode = SearchMode::kNested;
  BoundingMode bounding = BoundingMode::kStandard;
  std::optional<double> time_limit;
  std::optional<int64_t> conflict_limit;
  // 0 keeps the search deterministic without any random tie-breaking.
  uint64_t seed = 0;
  double vsids_decay = 0.95;
  std::vector<SolverEvent>* events = nullptr;
  const std::atomic<bool>* cancel = nullptr;
  std::function<void(const std::vector<int64_t>&, int64_t)> on_incumbent;
};

struct SolverStats {
  int64_t conflicts = 0;
  int64_t decisions = 0;
  int64_t multiple_decisions = 0;
  int64_t cores = 0;
  int64_t core_deactivations = 0;
  int64_t propagations = 0;
  int64_t learnt_clauses = 0;
  int64_t lp_calls = 0;
  int64_t lp_prunes = 0;
  int64_t lp_fathoms = 0;
  int64_t incumbents = 0;
  std::optional<int64_t> first_incumbent_cost;
  std::optional<int64_t> conflicts_to_first_incumbent;
  double seconds = 0;
};

struct SolveResult {
  enum Status { kOptimal, kInfeasible, kUnknown };
  Status status = kUnknown;
  // Model values of the best assignment found, with its cost.
  std::optional<std::vector<int64_t>> assignment;
  int64_t cost = 0;
  // Set when a limit stopped the search: "time", "conflicts" or "cancelled".
  std::string limit;
  SolverStats stats;
};

SolveResult Solve(const Problem& problem, const SolverConfig& config = {});

}  // namespace ucore

#endif  // UCORE_SEARCH_H_
