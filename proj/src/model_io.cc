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

#include <cctype>
#include <charconv>
#include <iterator>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ucore/model.h"

namespace ucore {

std::string_view ParseErrorKindName(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kMalformedHeader:
      return "malformed header";
    case ParseErrorKind::kLiteralOutOfRange:
      return "literal out of range";
    case ParseErrorKind::kNonPositiveWeight:
      return "non-positive weight";
    case ParseErrorKind::kWeightAboveTop:
      return "weight above top";
    case ParseErrorKind::kUndeclaredVariable:
      return "undeclared variable";
    case ParseErrorKind::kNonIntegerCoefficient:
      return "non-integer coefficient";
    case ParseErrorKind::kEmptyDomain:
      return "empty domain";
    case ParseErrorKind::kSyntax:
      return "syntax error";
  }
  return "unknown";
}

ParseError::ParseError(ParseErrorKind kind, int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " +
                         std::string(ParseErrorKindName(kind)) + ": " + what),
      kind_(kind),
      line_(line) {}

namespace {

std::string ReadAll(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

std::vector<std::string> SplitWs(std::string_view s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool ParseInt64(std::string_view s, int64_t* out) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool ParseUint64(std::string_view s, uint64_t* out) {
  if (s.empty() || s[0] == '-') return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

// ---------------------------------------------------------------- WCNF

Problem ParseWcnf(std::string_view text) {
  Problem problem;
  bool have_header = false;
  int64_t num_vars = 0;
  uint64_t top = 0;
  int line_no = 0;

  bool in_clause = false;
  bool clause_hard = false;
  uint64_t clause_weight = 0;
  ClauseConstraint clause;
  int clause_line = 0;

  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const std::vector<std::string> tokens = SplitWs(line);
    if (tokens.empty() || tokens[0][0] == 'c') {
      if (end == text.size()) break;
      continue;
    }
    if (tokens[0] == "p") {
      if (have_header) {
        throw ParseError(ParseErrorKind::kMalformedHeader, line_no,
                         "duplicate header");
      }
      int64_t num_clauses = 0;
      if (tokens.size() != 5 || tokens[1] != "wcnf" ||
          !ParseInt64(tokens[2], &num_vars) || num_vars < 0 ||
          !ParseInt64(tokens[3], &num_clauses) || num_clauses < 0 ||
          !ParseUint64(tokens[4], &top) || top == 0) {
        throw ParseError(ParseErrorKind::kMalformedHeader, line_no,
                         "expected 'p wcnf <vars> <clauses> <top>'");
      }
      have_header = true;
      for (int64_t v = 1; v <= num_vars; ++v) {
        problem.AddBool("x" + std::to_string(v));
      }
      if (end == text.size()) break;
      continue;
    }
    if (!have_header) {
      throw ParseError(ParseErrorKind::kMalformedHeader, line_no,
                       "clause before header");
    }
    for (const std::string& tok : tokens) {
      if (!in_clause) {
        int64_t signed_weight = 0;
        uint64_t weight = 0;
        if (ParseInt64(tok, &signed_weight) && signed_weight <= 0) {
          throw ParseError(ParseErrorKind::kNonPositiveWeight, line_no,
                           "weight " + tok);
        }
        if (!ParseUint64(tok, &weight)) {
          throw ParseError(ParseErrorKind::kSyntax, line_no,
                           "bad weight '" + tok + "'");
        }
        if (weight > top) {
          throw ParseError(ParseErrorKind::kWeightAboveTop, line_no,
                           "weight " + tok + " exceeds top");
        }
        in_clause = true;
        clause_hard = weight == top;
        clause_weight = weight;
        clause.lits.clear();
        clause_line = line_no;
        continue;
      }
      int64_t lit = 0;
      if (!ParseInt64(tok, &lit)) {
        throw ParseError(ParseErrorKind::kSyntax, line_no,
                         "bad literal '" + tok + "'");
      }
      if (lit == 0) {
        if (clause.lits.empty()) {
          throw ParseError(ParseErrorKind::kSyntax, clause_line,
                           "empty clause");
        }
        if (clause_hard) {
          problem.hard.emplace_back(clause);
        } else {
          problem.soft.push_back({clause, clause_weight});
        }
        in_clause = false;
        continue;
      }
      const int64_t var = lit > 0 ? lit : -lit;
      if (var > num_vars) {
        throw ParseError(ParseErrorKind::kLiteralOutOfRange, line_no,
                         "literal " + tok);
      }
      const int index = static_cast<int>(var - 1);
      clause.lits.push_back(lit > 0 ? Literal::BoolTrue(index)
                                    : Literal::BoolFalse(index));
    }
    if (end == text.size()) break;
  }
  if (!have_header) {
    throw ParseError(ParseErrorKind::kMalformedHeader, line_no,
                     "missing header");
  }
  if (in_clause) {
    throw ParseError(ParseErrorKind::kSyntax, clause_line,
                     "clause not terminated by 0");
  }
  problem = ReifySoft(std::move(problem));
  problem.TotalWeight();
  return problem;
}

Problem ParseWcnf(std::istream& in) { return ParseWcnf(ReadAll(in)); }

namespace {

int WcnfLit(const Problem& problem, const Literal& l) {
  const Variable& v = problem.vars[l.var];
  if (!v.is_bool) throw std::invalid_argument("WCNF requires Boolean vars");
  const bool holds_true = l.HoldsFor(1);
  const bool holds_false = l.HoldsFor(0);
  if (holds_true == holds_false) {
    throw std::invalid_argument("constant literal in WCNF clause");
  }
  return holds_true ? l.var + 1 : -(l.var + 1);
}

std::set<int> ReifiedIndices(const Problem& problem) {
  std::set<int> out;
  for (const SoftSpec& s : problem.soft) {
    if (s.reified_index >= 0) out.insert(s.reified_index);
  }
  return out;
}

int NumUserVars(const Problem& problem) {
  int n = 0;
  for (const Variable& v : problem.vars) {
    if (!v.relaxation) ++n;
  }
  return n;
}

}  // namespace

std::string WriteWcnf(const Problem& problem) {
  const std::set<int> reified = ReifiedIndices(problem);
  for (const ObjectiveTerm& t : problem.objective) {
    if (!problem.vars[t.var].relaxation) {
      throw std::invalid_argument("WCNF cannot express direct objective terms");
    }
  }
  uint64_t top = 1;
  for (const SoftSpec& s : problem.soft) top += s.weight;
  std::vector<std::pair<uint64_t, const ClauseConstraint*>> clauses;
  for (int i = 0; i < static_cast<int>(problem.hard.size()); ++i) {
    if (reified.count(i)) continue;
    const auto* c = std::get_if<ClauseConstraint>(&problem.hard[i]);
    if (c == nullptr) throw std::invalid_argument("WCNF requires clauses");
    clauses.emplace_back(top, c);
  }
  for (const SoftSpec& s : problem.soft) {
    const auto* c = std::get_if<ClauseConstraint>(&s.inner);
    if (c == nullptr) throw std::invalid_argument("WCNF requires soft clauses");
    clauses.emplace_back(s.weight, c);
  }
  std::ostringstream out;
  out << "p wcnf " << NumUserVars(problem) << " " << clauses.size() << " "
      << top << "\n";
  for (const auto& [w, c] : clauses) {
    out << w;
    for (const Literal& l : c->lits) out << " " << WcnfLit(problem, l);
    out << " 0\n";
  }
  return out.str();
}

// -------------------------------------------------------------- native

namespace {

class NativeParser {
 public:
  explicit NativeParser(Problem* problem) : p_(*problem) {}

  void Statement(std::string_view stmt, int line) {
    line_ = line;
    std::vector<std::string> tok = SplitWs(stmt);
    if (tok.empty()) return;
    const std::string& head = tok[0];
    if (head == "int") {
      if (tok.size() != 4)
        Fail(ParseErrorKind::kSyntax, "int <name> <lo> <hi>");
      int64_t lo = 0, hi = 0;
      if (!ParseInt64(tok[2], &lo) || !ParseInt64(tok[3], &hi)) {
        Fail(ParseErrorKind::kSyntax, "bad bounds for " + tok[1]);
      }
      if (lo > hi) Fail(ParseErrorKind::kEmptyDomain, tok[1]);
      Declare(tok[1]);
      p_.AddInt(tok[1], lo, hi);
    } else if (head == "bool") {
      if (tok.size() < 2) Fail(ParseErrorKind::kSyntax, "bool <name>");
      for (size_t i = 1; i < tok.size(); ++i) {
        Declare(tok[i]);
        p_.AddBool(tok[i]);
      }
    } else if (head == "clause" || head == "linear") {
      p_.hard.push_back(ToConstraint(Basic(stmt)));
    } else if (head == "soft") {
      if (tok.size() < 3) Fail(ParseErrorKind::kSyntax, "soft <weight> ...");
      int64_t w = 0;
      if (!ParseInt64(tok[1], &w)) {
        Fail(ParseErrorKind::kSyntax, "bad weight '" + tok[1] + "'");
      }
      if (w <= 0) Fail(ParseErrorKind::kNonPositiveWeight, tok[1]);
      const size_t at = stmt.find(tok[2], stmt.find(tok[1]) + tok[1].size());
      p_.soft.push_back({Basic(stmt.substr(at)), static_cast<uint64_t>(w)});
    } else if (head == "minimize") {
      const std::string body =
          Squeeze(stmt.substr(stmt.find(head) + head.size()));
      size_t pos = 0;
      for (const Term& t : Terms(body, &pos)) {
        if (t.coef <= 0) {
          Fail(ParseErrorKind::kNonPositiveWeight, "objective weight");
        }
        if (!p_.vars[t.var].is_bool) {
          Fail(ParseErrorKind::kSyntax, "objective variable must be Boolean");
        }
        p_.objective.push_back({t.var, static_cast<uint64_t>(t.coef)});
      }
      if (pos != body.size()) Fail(ParseErrorKind::kSyntax, "trailing input");
    } else {
      Fail(ParseErrorKind::kSyntax, "unknown statement '" + head + "'");
    }
  }

 private:
  [[noreturn]] void Fail(ParseErrorKind kind, const std::string& what) const {
    throw ParseError(kind, line_, what);
  }

  void Declare(const std::string& name) {
    if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) ||
                          name[0] == '_')) {
      Fail(ParseErrorKind::kSyntax, "bad variable name '" + name + "'");
    }
    for (char c : name) {
      if (!IsNameChar(c)) Fail(ParseErrorKind::kSyntax, "bad name " + name);
    }
    if (p_.FindVar(name)) Fail(ParseErrorKind::kSyntax, "redeclared " + name);
  }

  static bool IsNameChar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '.' || c == '[' || c == ']';
  }

  int Lookup(const std::string& name) const {
    const auto v = p_.FindVar(name);
    if (!v) Fail(ParseErrorKind::kUndeclaredVariable, name);
    return *v;
  }

  static Constraint ToConstraint(BasicConstraint c) {
    if (auto* clause = std::get_if<ClauseConstraint>(&c)) {
      return std::move(*clause);
    }
    return std::get<LinearConstraint>(std::move(c));
  }

  static std::string Squeeze(std::string_view s) {
    std::string out;
    for (char c : s) {
      if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    }
    return out;
  }

  BasicConstraint Basic(std::string_view stmt) {
    std::vector<std::string> tok = SplitWs(stmt);
    if (tok[0] == "clause") {
      if (tok.size() < 2) Fail(ParseErrorKind::kSyntax, "empty clause");
      ClauseConstraint c;
      for (size_t i = 1; i < tok.size(); ++i)
        c.lits.push_back(ClauseLit(tok[i]));
      return c;
    }
    if (tok[0] != "linear") {
      Fail(ParseErrorKind::kSyntax, "expected clause or linear");
    }
    const std::string body = Squeeze(
        stmt.substr(stmt.find("linear") + std::string_view("linear").size()));
    size_t pos = 0;
    LinearConstraint lin;
    lin.terms = Terms(body, &pos);
    if (body.compare(pos, 2, "<=") == 0) {
      lin.rel = Relation::kLe;
      pos += 2;
    } else if (body.compare(pos, 2, ">=") == 0) {
      lin.rel = Relation::kGe;
      pos += 2;
    } else if (body.compare(pos, 1, "=") == 0) {
      lin.rel = Relation::kEq;
      pos += 1;
    } else {
      Fail(ParseErrorKind::kSyntax, "expected <=, >= or =");
    }
    const std::string rhs = body.substr(pos);
    if (rhs.find('.') != std::string::npos) {
      Fail(ParseErrorKind::kNonIntegerCoefficient, rhs);
    }
    if (!ParseInt64(rhs, &lin.rhs)) {
      Fail(ParseErrorKind::kSyntax, "bad right-hand side '" + rhs + "'");
    }
    return lin;
  }

  // Parses `[+|-][<int>*]<name>` repeatedly from a whitespace-free string,
  // stopping at a relation symbol or the end.
  std::vector<Term> Terms(const std::string& s, size_t* pos) {
    std::vector<Term> terms;
    size_t i = *pos;
    while (i < s.size() && s[i] != '<' && s[i] != '>' && s[i] != '=') {
      int64_t sign = 1;
      if (s[i] == '+' || s[i] == '-') {
        if (s[i] == '-') sign = -1;
        ++i;
      } else if (!terms.empty()) {
        Fail(ParseErrorKind::kSyntax, "expected + or - between terms");
      }
      int64_t coef = 1;
      if (i < s.size() &&
          (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) {
        size_t j = i;
        while (j < s.size() &&
               (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.' ||
                s[j] == 'e' || s[j] == 'E')) {
          ++j;
        }
        const std::string num = s.substr(i, j - i);
        if (num.find_first_of(".eE") != std::string::npos) {
          Fail(ParseErrorKind::kNonIntegerCoefficient, num);
        }
        if (!ParseInt64(num, &coef)) {
          Fail(ParseErrorKind::kSyntax, "bad coefficient " + num);
        }
        if (j >= s.size() || s[j] != '*') {
          Fail(ParseErrorKind::kSyntax, "expected '*' after coefficient");
        }
        i = j + 1;
      }
      size_t j = i;
      while (j < s.size() && IsNameChar(s[j])) ++j;
      if (j == i) Fail(ParseErrorKind::kSyntax, "expected variable name");
      const int var = Lookup(s.substr(i, j - i));
      if (coef != 0) terms.push_back({sign * coef, var});
      i = j;
    }
    *pos = i;
    return terms;
  }

  Literal ClauseLit(const std::string& tok) {
    static const char* kOps[] = {">=", "<=", "!=", "="};
    for (const char* op : kOps) {
      const size_t at = tok.find(op);
      if (at == std::string::npos || at == 0) continue;
      const int var = Lookup(tok.substr(0, at));
      int64_t value = 0;
      const std::string rest = tok.substr(at + std::string_view(op).size());
      if (!ParseInt64(rest, &value)) {
        Fail(ParseErrorKind::kSyntax, "bad literal " + tok);
      }
      const std::string_view o(op);
      const LitKind kind = o == ">="   ? LitKind::kGeq
                           : o == "<=" ? LitKind::kLeq
                           : o == "!=" ? LitKind::kNeq
                                       : LitKind::kEq;
      return {var, kind, value};
    }
    const bool negated = tok[0] == '-' || tok[0] == '~';
    const int var = Lookup(negated ? tok.substr(1) : tok);
    if (!p_.vars[var].is_bool) {
      Fail(ParseErrorKind::kSyntax,
           "integer variable " + p_.vars[var].name + " used as a literal");
    }
    return negated ? Literal::BoolFalse(var) : Literal::BoolTrue(var);
  }

  Problem& p_;
  int line_ = 0;
};

std::string FormatLiteral(const Problem& p, const Literal& l) {
  const Variable& v = p.vars[l.var];
  if (v.is_bool) {
    const bool t = l.HoldsFor(1), f = l.HoldsFor(0);
    if (t && !f) return v.name;
    if (f && !t) return "-" + v.name;
  }
  switch (l.kind) {
    case LitKind::kEq:
      return v.name + "=" + std::to_string(l.value);
    case LitKind::kNeq:
      return v.name + "!=" + std::to_string(l.value);
    case LitKind::kGeq:
      return v.name + ">=" + std::to_string(l.value);
    case LitKind::kLeq:
      return v.name + "<=" + std::to_string(l.value);
  }
  return v.name;
}

std::string FormatBasic(const Problem& p, const BasicConstraint& c) {
  std::ostringstream out;
  if (const auto* clause = std::get_if<ClauseConstraint>(&c)) {
    out << "clause";
    for (const Literal& l : clause->lits) out << " " << FormatLiteral(p, l);
    return out.str();
  }
  const auto& lin = std::get<LinearConstraint>(c);
  out << "linear";
  for (size_t i = 0; i < lin.terms.size(); ++i) {
    const Term& t = lin.terms[i];
    if (i > 0)
      out << (t.coef < 0 ? " - " : " + ");
    else
      out << (t.coef < 0 ? " -" : " ");
    out << (t.coef < 0 ? -t.coef : t.coef) << "*" << p.vars[t.var].name;
  }
  if (lin.terms.empty())
    out << " 0*" << (p.vars.empty() ? "?" : p.vars[0].name);
  out << (lin.rel == Relation::kLe   ? " <= "
          : lin.rel == Relation::kGe ? " >= "
                                     : " = ")
      << lin.rhs;
  return out.str();
}

}  // namespace

Problem ParseNative(std::string_view text) {
  Problem problem;
  NativeParser parser(&problem);
  int line_no = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    size_t s = 0;
    while (s <= line.size()) {
      size_t e = line.find(';', s);
      if (e == std::string_view::npos) e = line.size();
      parser.Statement(line.substr(s, e - s), line_no);
      s = e + 1;
    }
  }
  problem = ReifySoft(std::move(problem));
  try {
    problem.Validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(ParseErrorKind::kSyntax, line_no, e.what());
  }
  return problem;
}

Problem ParseNative(std::istream& in) { return ParseNative(ReadAll(in)); }

std::string WriteNative(const Problem& problem) {
  const std::set<int> reified = ReifiedIndices(problem);
  std::ostringstream out;
  for (const Variable& v : problem.vars) {
    if (v.relaxation) continue;
    if (v.is_bool) {
      out << "bool " << v.name << "\n";
    } else {
      out << "int " << v.name << " " << v.lo << " " << v.hi << "\n";
    }
  }
  for (int i = 0; i < static_cast<int>(problem.hard.size()); ++i) {
    if (reified.count(i)) continue;
    const Constraint& c = problem.hard[i];
    if (std::holds_alternative<HalfReified>(c)) {
      throw std::invalid_argument("native format has no half-reified syntax");
    }
    if (const auto* clause = std::get_if<ClauseConstraint>(&c)) {
      out << FormatBasic(problem, *clause) << "\n";
    } else {
      out << FormatBasic(problem, std::get<LinearConstraint>(c)) << "\n";
    }
  }
  for (const SoftSpec& s : problem.soft) {
    out << "soft " << s.weight << " " << FormatBasic(problem, s.inner) << "\n";
  }
  bool first = true;
  for (const ObjectiveTerm& t : problem.objective) {
    if (problem.vars[t.var].relaxation) continue;
    out << (first ? "minimize " : " + ") << t.weight << "*"
        << problem.vars[t.var].name;
    first = false;
  }
  if (!first) out << "\n";
  return out.str();
}

InputFormat DetectFormat(std::string_view text) {
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::vector<std::string> tok = SplitWs(text.substr(pos, end - pos));
    pos = end + 1;
    if (tok.empty() || tok[0][0] == '#') continue;
    if (tok[0] == "c") continue;
    return tok[0] == "p" ? InputFormat::kWcnf : InputFormat::kNative;
  }
  return InputFormat::kNative;
}

Problem ParseAny(std::string_view text, InputFormat format) {
  if (format == InputFormat::kAuto) format = DetectFormat(text);
  return format == InputFormat::kWcnf ? ParseWcnf(text) : ParseNative(text);
}

}  // namespace ucore
