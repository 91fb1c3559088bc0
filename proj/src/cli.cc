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

#include "ucore/cli.h"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ucore/generate.h"

namespace ucore {

namespace {

constexpr SearchMode kModes[] = {SearchMode::kBranchAndBound,
                                 SearchMode::kBasic, SearchMode::kNested,
                                 SearchMode::kNestedNotify};
constexpr BoundingMode kBoundings[] = {
    BoundingMode::kStandard, BoundingMode::kDisjoint, BoundingMode::kLp};

bool ReadFile(const std::string& path, std::string* text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  *text = ss.str();
  return true;
}

// Parses `text`; on failure reports to `err` and returns std::nullopt.
std::optional<Problem> Load(const std::string& label, const std::string& text,
                            InputFormat format, std::ostream& err) {
  try {
    return ParseAny(text, format);
  } catch (const ParseError& e) {
    err << "error: " << label << ": " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << label << ": " << e.what() << "\n";
  }
  return std::nullopt;
}

std::string_view StatusName(const SolveResult& r) {
  switch (r.status) {
    case SolveResult::kOptimal:
      return "OPTIMUM FOUND";
    case SolveResult::kInfeasible:
      return "UNSATISFIABLE";
    case SolveResult::kUnknown:
      break;
  }
  return r.assignment ? "SATISFIABLE" : "UNKNOWN";
}

std::string_view ShortStatus(const SolveResult& r) {
  switch (r.status) {
    case SolveResult::kOptimal:
      return "OPTIMUM";
    case SolveResult::kInfeasible:
      return "UNSATISFIABLE";
    case SolveResult::kUnknown:
      break;
  }
  return r.assignment ? "SATISFIABLE" : "UNKNOWN";
}

int ExitCode(const SolveResult& r) {
  switch (r.status) {
    case SolveResult::kOptimal:
      return kExitOptimum;
    case SolveResult::kInfeasible:
      return kExitUnsatisfiable;
    case SolveResult::kUnknown:
      break;
  }
  return r.assignment ? kExitSatisfiable : kExitUnknown;
}

nlohmann::json StatsJson(const SolveResult& r) {
  const SolverStats& s = r.stats;
  nlohmann::json j;
  j["status"] = ShortStatus(r);
  j["cost"] = r.assignment ? nlohmann::json(r.cost) : nlohmann::json(nullptr);
  j["limit"] = r.limit;
  j["conflicts"] = s.conflicts;
  j["decisions"] = s.decisions;
  j["multiple_decisions"] = s.multiple_decisions;
  j["cores"] = s.cores;
  j["core_deactivations"] = s.core_deactivations;
  j["propagations"] = s.propagations;
  j["learnt_clauses"] = s.learnt_clauses;
  j["lp_calls"] = s.lp_calls;
  j["lp_prunes"] = s.lp_prunes;
  j["lp_fathoms"] = s.lp_fathoms;
  j["incumbents"] = s.incumbents;
  j["first_incumbent_cost"] = s.first_incumbent_cost
                                  ? nlohmann::json(*s.first_incumbent_cost)
                                  : nlohmann::json(nullptr);
  j["conflicts_to_first_incumbent"] =
      s.conflicts_to_first_incumbent
          ? nlohmann::json(*s.conflicts_to_first_incumbent)
          : nlohmann::json(nullptr);
  j["seconds"] = s.seconds;
  return j;
}

bool IsWcnf(const std::string& text, InputFormat format) {
  if (format == InputFormat::kAuto) format = DetectFormat(text);
  return format == InputFormat::kWcnf;
}

}  // namespace

std::string FormatAssignment(const Problem& problem,
                             const std::vector<int64_t>& values, bool dimacs) {
  std::string out;
  for (size_t i = 0; i < problem.vars.size(); ++i) {
    const Variable& v = problem.vars[i];
    if (v.relaxation) continue;
    if (!out.empty()) out += ' ';
    if (dimacs) {
      out += (values[i] != 0 ? "" : "-") + std::to_string(i + 1);
    } else {
      out += v.name + "=" + std::to_string(values[i]);
    }
  }
  return out;
}

std::vector<int64_t> ParseAssignment(const Problem& problem,
                                     const std::string& body, bool dimacs) {
  std::vector<int64_t> values(problem.vars.size(), 0);
  std::vector<char> seen(problem.vars.size(), 0);
  std::istringstream in(body);
  std::string tok;
  while (in >> tok) {
    int var = -1;
    int64_t value = 0;
    try {
      if (dimacs) {
        const int64_t lit = std::stoll(tok);
        var = static_cast<int>((lit < 0 ? -lit : lit) - 1);
        value = lit > 0 ? 1 : 0;
      } else {
        const size_t eq = tok.find('=');
        if (eq == std::string::npos) throw std::invalid_argument(tok);
        const auto found = problem.FindVar(tok.substr(0, eq));
        var = found ? *found : -1;
        value = std::stoll(tok.substr(eq + 1));
      }
    } catch (const std::logic_error&) {
      throw std::invalid_argument("malformed assignment token '" + tok + "'");
    }
    if (var < 0 || var >= static_cast<int>(problem.vars.size()) ||
        problem.vars[var].relaxation) {
      throw std::invalid_argument("unknown variable in '" + tok + "'");
    }
    values[var] = value;
    seen[var] = 1;
  }
  for (size_t i = 0; i < problem.vars.size(); ++i) {
    if (!problem.vars[i].relaxation && !seen[i]) {
      throw std::invalid_argument("missing value for " + problem.vars[i].name);
    }
  }
  CompleteRelaxation(problem, &values);
  return values;
}

int RunSolve(const SolveOptions& options, std::ostream& out,
             std::ostream& err) {
  std::string text;
  if (!ReadFile(options.path, &text)) {
    err << "error: cannot read " << options.path << "\n";
    return kExitError;
  }
  const std::optional<Problem> problem =
      Load(options.path, text, options.format, err);
  if (!problem) return kExitError;
  const bool dimacs = IsWcnf(text, options.format);

  out << "c ucore mode=" << SearchModeName(options.mode)
      << " bound=" << BoundingModeName(options.bounding) << "\n";
  out << "c variables=" << problem->vars.size()
      << " constraints=" << problem->hard.size()
      << " objective_terms=" << problem->objective.size() << "\n";
  SolverConfig config;
  config.mode = options.mode;
  config.bounding = options.bounding;
  config.time_limit = options.time_limit;
  config.conflict_limit = options.conflict_limit;
  config.seed = options.seed;
  config.cancel = options.cancel;
  config.on_incumbent = [&out](const std::vector<int64_t>&, int64_t cost) {
    out << "o " << cost << "\n" << std::flush;
  };
  const SolveResult r = Solve(*problem, config);
  if (!r.limit.empty()) out << "c stopped: " << r.limit << " limit\n";
  out << "s " << StatusName(r) << "\n";
  if (r.assignment) {
    out << "v " << FormatAssignment(*problem, *r.assignment, dimacs) << "\n";
  }
  if (!options.stats_path.empty()) {
    nlohmann::json j = StatsJson(r);
    j["instance"] = options.path;
    j["mode"] = SearchModeName(options.mode);
    j["bound"] = BoundingModeName(options.bounding);
    std::ofstream stats(options.stats_path);
    if (!stats) {
      err << "error: cannot write " << options.stats_path << "\n";
      return kExitError;
    }
    stats << j.dump(2) << "\n";
  }
  return ExitCode(r);
}

Problem RandomBatchInstance(uint64_t seed, int index) {
  const uint64_t s = seed * 1000003ULL + static_cast<uint64_t>(index);
  if (index % 6 == 5) {
    NativeParams p;
    p.vars = 6;
    p.max_domain = 6;
    p.constraints = 2 + index % 4;
    p.soft = 2 + index % 7;
    return GenerateRandomNative(p, s);
  }
  WcnfParams p;
  p.vars = 2 + index % 11;
  p.soft = 1 + (index * 7) % 40;
  p.hard = index % 8;
  p.width = 3;
  return GenerateRandomWcnf(p, s);
}

int RunVerify(const VerifyOptions& options, std::ostream& out,
              std::ostream& err) {
  struct Row {
    std::string instance;
    std::string variant;
    std::string expected;
    std::string got;
  };
  std::vector<Row> disagreements;

  auto describe = [](bool feasible, int64_t cost) {
    return feasible ? "optimum " + std::to_string(cost)
                    : std::string("infeasible");
  };
  // Returns false when the oracle cap is exceeded.
  auto check = [&](const std::string& label, const Problem& p,
                   bool verbose) -> bool {
    const OracleResult o = BruteForceOptimum(p, options.cap);
    if (o.status == OracleResult::kCapExceeded) return false;
    const bool feasible = o.status == OracleResult::kOptimal;
    const std::string expected =
        describe(feasible, static_cast<int64_t>(o.cost));
    if (verbose) out << "c oracle: " << expected << "\n";
    for (SearchMode m : kModes) {
      for (BoundingMode b : kBoundings) {
        SolverConfig config;
        config.mode = m;
        config.bounding = b;
        config.time_limit = options.time_limit;
        const SolveResult r = Solve(p, config);
        std::string got;
        if (r.status == SolveResult::kOptimal) {
          got = describe(true, r.cost);
        } else if (r.status == SolveResult::kInfeasible) {
          got = describe(false, 0);
        } else {
          got = "unknown";
        }
        const std::string variant = Variant{m, b}.Name();
        if (verbose) out << "c " << variant << ": " << got << "\n";
        if (got != expected) {
          disagreements.push_back({label, variant, expected, got});
        }
      }
    }
    return true;
  };

  int instances = 0;
  int agreeing = 0;
  if (options.random > 0) {
    for (int i = 0; i < options.random; ++i) {
      const size_t before = disagreements.size();
      const std::string label = "random#" + std::to_string(i);
      if (!check(label, RandomBatchInstance(options.seed, i), false)) {
        err << "error: " << label << " exceeds the oracle cap\n";
        return kExitCapExceeded;
      }
      ++instances;
      if (disagreements.size() == before) ++agreeing;
    }
  } else {
    std::string text;
    if (!ReadFile(options.path, &text)) {
      err << "error: cannot read " << options.path << "\n";
      return kExitError;
    }
    const std::optional<Problem> p =
        Load(options.path, text, options.format, err);
    if (!p) return kExitError;
    if (!check(options.path, *p, true)) {
      err << "error: search space exceeds the oracle cap of " << options.cap
          << " assignments\n";
      return kExitCapExceeded;
    }
    instances = 1;
    agreeing = disagreements.empty() ? 1 : 0;
  }

  if (!disagreements.empty()) {
    out << "instance\tvariant\texpected\tgot\n";
    for (const Row& r : disagreements) {
      out << r.instance << "\t" << r.variant << "\t" << r.expected << "\t"
          << r.got << "\n";
    }
  }
  if (options.random > 0) {
    out << agreeing << "/" << instances << " agree\n";
  } else {
    const int combos = std::size(kModes) * std::size(kBoundings);
    out << (combos - static_cast<int>(disagreements.size())) << "/" << combos
        << " agree\n";
  }
  return disagreements.empty() ? 0 : kExitError;
}

std::string Variant::Name() const {
  return std::string(SearchModeName(mode)) + ":" +
         std::string(BoundingModeName(bounding));
}

std::optional<Variant> ParseVariant(const std::string& text) {
  const size_t colon = text.find(':');
  const std::string mode = text.substr(0, colon);
  const std::string bound =
      colon == std::string::npos ? "std" : text.substr(colon + 1);
  const auto m = ParseSearchMode(mode);
  const auto b = ParseBoundingMode(bound);
  if (!m || !b) return std::nullopt;
  return Variant{*m, *b};
}

nlohmann::json BenchReport(
    const std::vector<std::pair<std::string, std::string>>& named_texts,
    const BenchOptions& options, std::ostream& err) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [name, text] : named_texts) {
    std::ostringstream parse_err;
    const std::optional<Problem> p =
        Load(name, text, InputFormat::kAuto, parse_err);
    for (const Variant& v : options.variants) {
      nlohmann::json row;
      row["instance"] = name;
      row["variant"] = v.Name();
      if (!p) {
        row["status"] = "ERROR";
        row["warning"] = parse_err.str();
        rows.push_back(row);
        continue;
      }
      nlohmann::json trace = nlohmann::json::array();
      const auto start = std::chrono::steady_clock::now();
      SolverConfig config;
      config.mode = v.mode;
      config.bounding = v.bounding;
      config.time_limit = options.time_limit;
      config.conflict_limit = options.conflict_limit;
      config.on_incumbent = [&](const std::vector<int64_t>&, int64_t cost) {
        const std::chrono::duration<double> t =
            std::chrono::steady_clock::now() - start;
        trace.push_back({{"cost", cost}, {"time", t.count()}});
      };
      const SolveResult r = Solve(*p, config);
      nlohmann::json stats = StatsJson(r);
      row["status"] = stats["status"];
      row["cost"] = stats["cost"];
      row["time"] = r.stats.seconds;
      row["conflicts"] = r.stats.conflicts;
      row["decisions"] = r.stats.decisions;
      row["cores"] = r.stats.cores;
      row["first_incumbent_cost"] = stats["first_incumbent_cost"];
      row["conflicts_to_first_incumbent"] =
          stats["conflicts_to_first_incumbent"];
      row["incumbent_trace"] = trace;
      rows.push_back(row);
    }
    if (!p) err << "warning: skipping " << parse_err.str();
  }

  nlohmann::json aggregate = nlohmann::json::object();
  for (const Variant& v : options.variants) {
    int count = 0;
    int opt = 0;
    int sol = 0;
    double time = 0;
    double obj = 0;
    for (const nlohmann::json& row : rows) {
      if (row["variant"] != v.Name() || row["status"] == "ERROR") continue;
      ++count;
      time += row["time"].get<double>();
      if (row["status"] == "OPTIMUM" || row["status"] == "UNSATISFIABLE") ++opt;
      if (!row["cost"].is_null()) {
        ++sol;
        obj += row["cost"].get<double>();
      }
    }
    aggregate[v.Name()] = {
        {"instances", count},
        {"opt", opt},
        {"sol", sol},
        {"mean_time", count > 0 ? time / count : 0.0},
        {"mean_obj", sol > 0 ? obj / sol : 0.0},
    };
  }
  nlohmann::json variants = nlohmann::json::array();
  for (const Variant& v : options.variants) variants.push_back(v.Name());
  return {
      {"variants", variants},
      {"time_limit", options.time_limit ? nlohmann::json(*options.time_limit)
                                        : nlohmann::json(nullptr)},
      {"rows", rows},
      {"aggregate", aggregate}};
}

int RunBench(const BenchOptions& options, std::ostream& out,
             std::ostream& err) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(options.dir, ec)) {
    err << "error: " << options.dir << " is not a directory\n";
    return kExitError;
  }
  std::vector<fs::path> files;
  for (const fs::directory_entry& e : fs::directory_iterator(options.dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::pair<std::string, std::string>> texts;
  for (const fs::path& f : files) {
    std::string text;
    if (!ReadFile(f.string(), &text)) {
      err << "warning: cannot read " << f.string() << "\n";
    }
    texts.emplace_back(f.filename().string(), text);
  }
  const nlohmann::json report = BenchReport(texts, options, err);
  if (options.out_path.empty()) {
    out << report.dump(2) << "\n";
  } else {
    std::ofstream file(options.out_path);
    if (!file) {
      err << "error: cannot write " << options.out_path << "\n";
      return kExitError;
    }
    file << report.dump(2) << "\n";
  }
  return 0;
}

int RunGen(const GenOptions& options, std::ostream& out, std::ostream& err) {
  auto pick = [](auto value, auto fallback) {
    return value > 0 ? value : fallback;
  };
  if (options.out_dir.empty() && options.count != 1) {
    err << "error: --out is required when generating more than one instance\n";
    return kExitError;
  }
  for (int i = 0; i < options.count; ++i) {
    const uint64_t seed = options.seed * 1000003ULL + static_cast<uint64_t>(i);
    Problem p;
    std::string ext = ".wcnf";
    if (options.family == "random-wcnf") {
      WcnfParams w;
      w.vars = pick(options.vars, w.vars);
      w.hard = options.hard >= 0 ? options.hard : w.hard;
      w.soft = pick(options.soft, w.soft);
      w.width = pick(options.width, w.width);
      w.min_weight = pick(options.min_weight, w.min_weight);
      w.max_weight =
          std::max(pick(options.max_weight, w.max_weight), w.min_weight);
      p = GenerateRandomWcnf(w, seed);
    } else if (options.family == "random-native") {
      NativeParams n;
      n.vars = pick(options.vars, n.vars);
      n.constraints = options.hard >= 0 ? options.hard : n.constraints;
      n.soft = pick(options.soft, n.soft);
      n.min_weight = pick(options.min_weight, n.min_weight);
      n.max_weight =
          std::max(pick(options.max_weight, n.max_weight), n.min_weight);
      p = GenerateRandomNative(n, seed);
      ext = ".cop";
    } else if (options.family == "mostly-sat") {
      MostlySatParams m;
      m.vars = pick(options.vars, m.vars);
      m.hard = options.hard >= 0 ? options.hard : m.hard;
      m.soft = pick(options.soft, m.soft);
      m.width = pick(options.width, m.width);
      m.violated = options.violated >= 0 ? options.violated : m.violated;
      if (2 * m.violated > m.soft || m.violated > m.vars) {
        err << "error: mostly-sat needs 2 * violated <= soft and violated <= "
               "vars\n";
        return kExitError;
      }
      p = GenerateMostlySat(m, seed);
    } else {
      err << "error: unknown family '" << options.family << "'\n";
      return kExitError;
    }
    const std::string body = ext == ".wcnf" ? WriteWcnf(p) : WriteNative(p);
    if (options.out_dir.empty()) {
      out << body;
      continue;
    }
    std::filesystem::create_directories(options.out_dir);
    char name[64];
    std::snprintf(name, sizeof(name), "%s-%llu-%03d", options.family.c_str(),
                  static_cast<unsigned long long>(options.seed), i);
    const std::filesystem::path path =
        std::filesystem::path(options.out_dir) / (name + ext);
    std::ofstream file(path);
    if (!file) {
      err << "error: cannot write " << path.string() << "\n";
      return kExitError;
    }
    file << body;
  }
  return 0;
}

}  // namespace ucore
