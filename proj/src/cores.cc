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

#include "ucore/cores.h"

#include <utility>

namespace ucore {

CoreRegistry::CoreRegistry(int num_objective, SearchMode mode)
    : mode_(mode),
      counts_(num_objective, 0),
      stacks_(num_objective),
      in_f_(num_objective, 1) {}

int CoreRegistry::Register(std::vector<Lit> premises, std::vector<int> members,
                           int level, CoreSource source,
                           const std::function<bool(int)>& is_true) {
  const int id = static_cast<int>(records_.size());
  CoreRecord r;
  r.premises = std::move(premises);
  r.members = std::move(members);
  r.level = level;
  r.source = source;
  for (int m : r.members) {
    in_f_[m] = 0;
    if (is_true && is_true(m)) r.active = false;
  }
  for (int m : r.members) {
    stacks_[m].push_back(id);
    if (r.active) ++counts_[m];
  }
  records_.push_back(std::move(r));
  undo_.push_back({UndoKind::kRegister, id, level});
  for (CoreListener* l : listeners_) l->OnCoreAdded(id);
  return id;
}

void CoreRegistry::Deactivate(int id, int level) {
  CoreRecord& r = records_[id];
  r.active = false;
  for (int m : r.members) --counts_[m];
  undo_.push_back({UndoKind::kDeactivate, id, level});
  ++deactivations_;
  for (CoreListener* l : listeners_) l->OnCoreDeactivated(id);
}

void CoreRegistry::OnObjectiveTrue(int index, int level) {
  for (int id : stacks_[index]) {
    if (records_[id].active) Deactivate(id, level);
  }
}

void CoreRegistry::BackjumpTo(int level) {
  while (!undo_.empty() && undo_.back().level > level) {
    const Undo u = undo_.back();
    undo_.pop_back();
    CoreRecord& r = records_[u.record];
    if (u.kind == UndoKind::kDeactivate) {
      r.active = true;
      for (int m : r.members) ++counts_[m];
      for (CoreListener* l : listeners_) l->OnCoreReactivated(u.record);
    } else {
      for (int m : r.members) {
        stacks_[m].pop_back();
        if (r.active) --counts_[m];
      }
      records_.pop_back();
      for (CoreListener* l : listeners_) l->OnCoreRemoved(u.record);
    }
  }
}

std::vector<int> CoreRegistry::Candidates(
    int level, const std::function<bool(int)>& is_free) const {
  std::vector<int> out;
  switch (mode_) {
    case SearchMode::kBranchAndBound:
      break;
    case SearchMode::kBasic:
      if (level != 0) break;
      for (int i = 0; i < num_objective(); ++i) {
        if (in_f_[i] && is_free(i)) out.push_back(i);
      }
      break;
    case SearchMode::kNested:
    case SearchMode::kNestedNotify:
      for (int i = 0; i < num_objective(); ++i) {
        if (counts_[i] == 0 && is_free(i)) out.push_back(i);
      }
      break;
  }
  return out;
}

int CoreRegistry::num_active() const {
  int n = 0;
  for (const CoreRecord& r : records_) n += r.active ? 1 : 0;
  return n;
}

bool CoreRegistry::CountsConsistent() const {
  std::vector<int> fresh(counts_.size(), 0);
  for (const CoreRecord& r : records_) {
    if (!r.active) continue;
    for (int m : r.members) ++fresh[m];
  }
  return fresh == counts_;
}

}  // namespace ucore
