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

// Seeded instance generators. The same parameters and seed always give the
// same instance.

#ifndef UCORE_GENERATE_H_
#define UCORE_GENERATE_H_

#include <cstdint>

#include "ucore/model.h"

namespace ucore {

struct WcnfParams {
  int vars = 8;
  int hard = 6;
  int soft = 16;
  int width = 3;
  int64_t min_weight = 1;
  int64_t max_weight = 8;
};

// Random weighted partial MAXSAT: clause widths are uniform in 1..width.
Problem GenerateRandomWcnf(const WcnfParams& params, uint64_t seed);

struct NativeParams {
  int vars = 5;
  int64_t max_domain = 6;
  int constraints = 4;
  int soft = 6;
  int64_t min_weight = 1;
  int64_t max_weight = 8;
};

// Integer variables with mixed linear constraints and clauses over bound
// literals, hard and soft.
Problem GenerateRandomNative(const NativeParams& params, uint64_t seed);

struct MostlySatParams {
  int vars = 30;
  int hard = 60;
  int soft = 60;
  // Number of soft constraints any optimal assignment violates.
  int violated = 2;
  int width = 3;
};

// A planted assignment satisfies every hard clause and all but `violated`
// soft clauses. Each unavoidable violation comes from a pair of soft unit
// clauses x and ~x, so the optimum is exactly `violated`.
Problem GenerateMostlySat(const MostlySatParams& params, uint64_t seed);

}  // namespace ucore

#endif  // UCORE_GENERATE_H_
