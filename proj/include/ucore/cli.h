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

// Subcommands of the ucore command-line tool. Output follows the MAXSAT
// evaluation conventions: `c` comments, `o` incumbent costs, one `s` status
// line and one `v` assignment line.

#ifndef UCORE_CLI_H_
#define UCORE_CLI_H_

#include <atomic>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ucore/model.h"
#include "ucore/search.h"

namespace ucore {

inline constexpr int kExitOptimum = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCapExceeded = 2;
inline constexpr int kExitSatisfiable = 10;
inline constexpr int kExitUnsatisfiable = 20;
inline constexpr int kExitUnknown = 30;

struct SolveOptions {
  std::string path;
  InputFormat format = InputFormat::kAuto;
  SearchMode mode = SearchMode::kNested;
  BoundingMode bounding = BoundingMode::kStandard;
  std::optional<double> time_limit;
  std::optional<int64_t> conflict_limit;
  uint64_t seed = 0;
  std::string stats_path;
  const std::atomic<bool>* cancel = nullptr;
};

int RunSolve(const SolveOptions& options, std::ostream& out, std::ostream& err);

// `v` line body: signed DIMACS literals for WCNF input, name=value pairs
// otherwise. Relaxation variables are omitted.
std::string FormatAssignment(const Problem& problem,
                             const std::vector<int64_t>& values, bool dimacs);
// Inverse of FormatAssignment(); relaxation variables are completed
// optimally. Throws std::invalid_argument on malformed input.
std::vector<int64_t> ParseAssignment(const Problem& problem,
                                     const std::string& body, bool dimacs);

struct VerifyOptions {
  std::string path;
  InputFormat format = InputFormat::kAuto;
  // Number of generated instances checked instead of a file.
  int random = 0;
  uint64_t seed = 1;
  uint64_t cap = kDefaultOracleCap;
  std::optional<double> time_limit;
};

int RunVerify(const VerifyOptions& options, std::ostream& out,
              std::ostream& err);

// Instance `index` of the seeded batch checked by `verify --random`.
Problem RandomBatchInstance(uint64_t seed, int index);

struct Variant {
  SearchMode mode = SearchMode::kNested;
  BoundingMode bounding = BoundingMode::kStandard;
  std::string Name() const;
};
// Parses "mode:bound", for example "nested-notify:std".
std::optional<Variant> ParseVariant(const std::string& text);

struct BenchOptions {
  std::string dir;
  std::vector<Variant> variants;
  std::optional<double> time_limit = 10.0;
  std::optional<int64_t> conflict_limit;
  std::string out_path;
};

// Solves every instance with every variant. Rows are ordered by instance
// name, then variant. Unreadable instances produce an error row.
nlohmann::json BenchReport(
    const std::vector<std::pair<std::string, std::string>>& named_texts,
    const BenchOptions& options, std::ostream& err);

int RunBench(const BenchOptions& options, std::ostream& out, std::ostream& err);

struct GenOptions {
  std::string family = "random-wcnf";
  std::string out_dir;
  int count = 1;
  uint64_t seed = 1;
  int vars = 0;
  int hard = -1;
  int soft = 0;
  int width = 0;
  int64_t min_weight = 0;
  int64_t max_weight = 0;
  int violated = -1;
};

int RunGen(const GenOptions& options, std::ostream& out, std::ostream& err);

}  // namespace ucore

#endif  // UCORE_CLI_H_
