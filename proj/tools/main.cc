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

#include <atomic>
#include <csignal>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "ucore/cli.h"

namespace {

std::atomic<bool> g_cancel{false};

void OnSignal(int) { g_cancel.store(true); }

const std::map<std::string, ucore::SearchMode> kModeMap = {
    {"bb", ucore::SearchMode::kBranchAndBound},
    {"basic", ucore::SearchMode::kBasic},
    {"nested", ucore::SearchMode::kNested},
    {"nested-notify", ucore::SearchMode::kNestedNotify},
};
const std::map<std::string, ucore::BoundingMode> kBoundMap = {
    {"std", ucore::BoundingMode::kStandard},
    {"disjoint", ucore::BoundingMode::kDisjoint},
    {"lp", ucore::BoundingMode::kLp},
};
const std::map<std::string, ucore::InputFormat> kFormatMap = {
    {"auto", ucore::InputFormat::kAuto},
    {"wcnf", ucore::InputFormat::kWcnf},
    {"cop", ucore::InputFormat::kNative},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ucore: core-guided branch-and-bound optimization solver"};
  app.require_subcommand(1);

  ucore::SolveOptions solve;
  double time_limit = -1;
  int64_t conflict_limit = -1;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  solve_cmd->add_option("file", solve.path, "WCNF or native instance")
      ->required();
  solve_cmd->add_option("--mode", solve.mode, "Search strategy")
      ->transform(CLI::CheckedTransformer(kModeMap, CLI::ignore_case));
  solve_cmd->add_option("--bound", solve.bounding, "Objective bounding")
      ->transform(CLI::CheckedTransformer(kBoundMap, CLI::ignore_case));
  solve_cmd->add_option("--time-limit", time_limit, "Seconds");
  solve_cmd->add_option("--conflict-limit", conflict_limit, "Conflicts");
  solve_cmd->add_option("--seed", solve.seed, "Random seed, 0 for none");
  solve_cmd->add_option("--stats", solve.stats_path, "Write JSON statistics");
  solve_cmd->add_option("--format", solve.format, "Input format")
      ->transform(CLI::CheckedTransformer(kFormatMap, CLI::ignore_case));

  ucore::VerifyOptions verify;
  double verify_time_limit = -1;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Cross-check every solver variant against brute force");
  verify_cmd->add_option("file", verify.path, "Instance to check");
  verify_cmd->add_option("--random", verify.random,
                         "Check this many generated instances instead");
  verify_cmd->add_option("--seed", verify.seed, "Generator seed");
  verify_cmd->add_option("--cap", verify.cap, "Oracle search-space cap");
  verify_cmd->add_option("--time-limit", verify_time_limit,
                         "Seconds per solver run");
  verify_cmd->add_option("--format", verify.format, "Input format")
      ->transform(CLI::CheckedTransformer(kFormatMap, CLI::ignore_case));

  ucore::BenchOptions bench;
  std::vector<std::string> variants = {"bb:std", "nested-notify:std"};
  double bench_time_limit = 10;
  int64_t bench_conflict_limit = -1;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "Run solver variants over a directory");
  bench_cmd->add_option("dir", bench.dir, "Instance directory")->required();
  bench_cmd->add_option("--variants", variants, "mode:bound pairs")
      ->delimiter(',');
  bench_cmd->add_option("--time-limit", bench_time_limit,
                        "Seconds per instance and variant");
  bench_cmd->add_option("--conflict-limit", bench_conflict_limit, "Conflicts");
  bench_cmd->add_option("--out", bench.out_path, "Report path (JSON)");

  ucore::GenOptions gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate seeded instances");
  gen_cmd->add_option("--family", gen.family, "Instance family")
      ->check(CLI::IsMember({"random-wcnf", "random-native", "mostly-sat"}));
  gen_cmd->add_option("--count", gen.count, "Number of instances");
  gen_cmd->add_option("--seed", gen.seed, "Seed");
  gen_cmd->add_option("--out", gen.out_dir, "Output directory");
  gen_cmd->add_option("--vars", gen.vars, "Variables");
  gen_cmd->add_option("--hard", gen.hard, "Hard constraints");
  gen_cmd->add_option("--soft", gen.soft, "Soft constraints");
  gen_cmd->add_option("--width", gen.width, "Maximum clause width");
  gen_cmd->add_option("--min-weight", gen.min_weight, "Smallest weight");
  gen_cmd->add_option("--max-weight", gen.max_weight, "Largest weight");
  gen_cmd->add_option("--violated", gen.violated,
                      "Soft constraints violated at the optimum (mostly-sat)");

  CLI11_PARSE(app, argc, argv);

  std::signal(SIGINT, OnSignal);
  std::signal(SIGTERM, OnSignal);

  if (*solve_cmd) {
    if (time_limit >= 0) solve.time_limit = time_limit;
    if (conflict_limit >= 0) solve.conflict_limit = conflict_limit;
    solve.cancel = &g_cancel;
    return ucore::RunSolve(solve, std::cout, std::cerr);
  }
  if (*verify_cmd) {
    if (verify.path.empty() && verify.random <= 0) {
      std::cerr << "error: verify needs a file or --random N\n";
      return ucore::kExitError;
    }
    if (verify_time_limit >= 0) verify.time_limit = verify_time_limit;
    return ucore::RunVerify(verify, std::cout, std::cerr);
  }
  if (*bench_cmd) {
    for (const std::string& v : variants) {
      const auto parsed = ucore::ParseVariant(v);
      if (!parsed) {
        std::cerr << "error: bad variant '" << v << "'\n";
        return ucore::kExitError;
      }
      bench.variants.push_back(*parsed);
    }
    bench.time_limit = bench_time_limit;
    if (bench_conflict_limit >= 0) bench.conflict_limit = bench_conflict_limit;
    return ucore::RunBench(bench, std::cout, std::cerr);
  }
  return ucore::RunGen(gen, std::cout, std::cerr);
}
