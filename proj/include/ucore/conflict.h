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

// Conflict analysis. Resolution runs backwards over the propagations of the
// conflict level and stops at a single conflict-level literal (1UIP) or when
// only decisions remain there, which yields a generalized nogood L -> M.

#ifndef UCORE_CONFLICT_H_
#define UCORE_CONFLICT_H_

#include <functional>
#include <span>
#include <vector>

#include "ucore/cores.h"
#include "ucore/propagation.h"

namespace ucore {

struct GeneralizedNogood {
  // Conjunction of true literals below the conflict level.
  std::vector<Lit> premises;
  // Disjunction; negations of the conflict-level literals.
  std::vector<Lit> conclusions;
  int conflict_level = 0;
};

class ConflictAnalyzer {
 public:
  explicit ConflictAnalyzer(PropagationEngine* engine);

  // Called with every atom touched during analysis.
  void SetBumpCallback(std::function<void(Var)> bump) {
    bump_ = std::move(bump);
  }

  // `nogood` holds true literals; level-0 literals are dropped. Requires at
  // least one literal above level 0.
  GeneralizedNogood Analyze(std::span<const Lit> nogood);

  // Highest level among the premises, or 0.
  int BackjumpLevel(const GeneralizedNogood& g) const;

  // Removes premises implied by the other literals of a 1UIP nogood.
  void Minimize(GeneralizedNogood* g);

  // Replaces auxiliary literals by the literals that propagated them.
  void ExpandAux(std::vector<Lit>* lits) const;

  // Must run after the backjump. A 1UIP nogood becomes an asserting learnt
  // clause. A generalized nogood is learnt as a notify-mode clause in
  // kNestedNotify mode and handed to `register_core` otherwise.
  void Learn(
      const GeneralizedNogood& g, SearchMode mode,
      const std::function<void(const GeneralizedNogood&)>& register_core);

 private:
  PropagationEngine& engine_;
  DomainStore& store_;
  std::function<void(Var)> bump_;
  std::vector<char> seen_;
  std::vector<Lit> reasons_;
};

}  // namespace ucore

#endif  // UCORE_CONFLICT_H_
