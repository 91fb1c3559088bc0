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

// Bookkeeping of unsatisfiable cores: the never-cored candidate set F of the
// basic strategy, and the per-objective activity counts and stacks of the
// nested strategies. Records are a stack ordered by registration; undo pops
// registrations and reverts deactivations logged above a level.

#ifndef UCORE_CORES_H_
#define UCORE_CORES_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ucore/literal.h"

namespace ucore {

enum class SearchMode { kBranchAndBound, kBasic, kNested, kNestedNotify };

enum class CoreSource { kConflict, kNotification, kInput };

struct CoreRecord {
  // Literals that were true at registration; the core holds while they do.
  std::vector<Lit> premises;
  // Objective indices; at least one of them must be true.
  std::vector<int> members;
  bool active = true;
  int level = 0;
  CoreSource source = CoreSource::kConflict;
};

class CoreListener {
 public:
  virtual ~CoreListener() = default;
  virtual void OnCoreAdded(int id) = 0;
  // Called after the record was popped; `id` equals the old size - 1.
  virtual void OnCoreRemoved(int id) = 0;
  virtual void OnCoreDeactivated(int id) = 0;
  virtual void OnCoreReactivated(int id) = 0;
};

class CoreRegistry {
 public:
  CoreRegistry(int num_objective, SearchMode mode);

  SearchMode mode() const { return mode_; }
  int num_objective() const { return static_cast<int>(counts_.size()); }

  // Registers the core premises -> OR(members) at `level`. Members that are
  // already true make the record inactive from the start.
  int Register(std::vector<Lit> premises, std::vector<int> members, int level,
               CoreSource source,
               const std::function<bool(int)>& is_true = nullptr);
  // Objective `index` became true at `level`: deactivates its active records.
  void OnObjectiveTrue(int index, int level);
  // Reverts everything logged above `level`.
  void BackjumpTo(int level);

  // Basic: unfixed members of F, only at level 0. Nested modes: unfixed
  // objectives with no active core. Branch and bound: none.
  std::vector<int> Candidates(int level,
                              const std::function<bool(int)>& is_free) const;

  int count(int index) const { return counts_[index]; }
  bool in_f(int index) const { return in_f_[index]; }
  const std::vector<int>& stack(int index) const { return stacks_[index]; }
  int num_records() const { return static_cast<int>(records_.size()); }
  const CoreRecord& record(int id) const { return records_[id]; }
  int num_active() const;

  // Recounts a_i from the records and compares with the maintained counts.
  bool CountsConsistent() const;

  void AddListener(CoreListener* l) { listeners_.push_back(l); }

  int64_t deactivations() const { return deactivations_; }

 private:
  enum class UndoKind { kRegister, kDeactivate };
  struct Undo {
    UndoKind kind;
    int record;
    int level;
  };

  void Deactivate(int id, int level);

  SearchMode mode_;
  std::vector<CoreRecord> records_;
  std::vector<int> counts_;
  std::vector<std::vector<int>> stacks_;
  std::vector<char> in_f_;
  std::vector<Undo> undo_;
  std::vector<CoreListener*> listeners_;
  int64_t deactivations_ = 0;
};

}  // namespace ucore

#endif  // UCORE_CORES_H_
