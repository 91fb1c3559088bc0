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

// Problem representation for constraint optimization with a pseudo-Boolean
// objective: integer and Boolean variables, hard constraints, weighted soft
// constraints, and a minimized objective sum of weighted Boolean variables.
//
// Soft constraints are compiled away by ReifySoft(): every soft constraint S
// gets a fresh Boolean relaxation variable y and the hard half-reified
// constraint (not y) -> S, and the objective gains the term weight * y.

#ifndef UCORE_MODEL_H_
#define UCORE_MODEL_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ucore/literal.h"

namespace ucore {

struct Variable {
  std::string name;
  int64_t lo = 0;
  int64_t hi = 1;
  bool is_bool = true;
  // Created by ReifySoft() for a soft constraint.
  bool relaxation = false;

  int64_t DomainSize() const { return hi - lo + 1; }
  friend bool operator==(const Variable&, const Variable&) = default;
};

struct Term {
  int64_t coef = 0;
  int var = -1;
  friend bool operator==(const Term&, const Term&) = default;
};

enum class Relation { kLe, kGe, kEq };

struct ClauseConstraint {
  std::vector<Literal> lits;
  friend bool operator==(const ClauseConstraint&,
                         const ClauseConstraint&) = default;
};

// sum(terms) rel rhs.
struct LinearConstraint {
  std::vector<Term> terms;
  Relation rel = Relation::kLe;
  int64_t rhs = 0;
  friend bool operator==(const LinearConstraint&,
                         const LinearConstraint&) = default;
};

using BasicConstraint = std::variant<ClauseConstraint, LinearConstraint>;

// guard -> inner. Soft linear constraints are reified as (not y) -> inner.
struct HalfReified {
  Literal guard;
  BasicConstraint inner;
  friend bool operator==(const HalfReified&, const HalfReified&) = default;
};

using Constraint =
    std::variant<ClauseConstraint, LinearConstraint, HalfReified>;

struct SoftSpec {
  BasicConstraint inner;
  uint64_t weight = 1;
  // Filled by ReifySoft().
  int relax_var = -1;
  int reified_index = -1;
  friend bool operator==(const SoftSpec&, const SoftSpec&) = default;
};

struct ObjectiveTerm {
  int var = -1;
  uint64_t weight = 1;
  friend bool operator==(const ObjectiveTerm&, const ObjectiveTerm&) = default;
};

struct Problem {
  std::vector<Variable> vars;
  // User hard constraints followed by the reified soft constraints.
  std::vector<Constraint> hard;
  std::vector<SoftSpec> soft;
  // Minimized: sum of weight * var over Boolean variables.
  std::vector<ObjectiveTerm> objective;

  int AddBool(std::string name);
  int AddInt(std::string name, int64_t lo, int64_t hi);
  std::optional<int> FindVar(std::string_view name) const;

  // Sum of all objective weights; throws std::overflow_error when it does
  // not fit into an int64_t.
  int64_t TotalWeight() const;

  // Throws std::invalid_argument on a malformed problem: empty domain, zero
  // weight, objective over a non-Boolean or repeated variable, a literal or
  // term over an undeclared variable.
  void Validate() const;

  friend bool operator==(const Problem&, const Problem&) = default;
};

// Adds one relaxation variable and one half-reified hard constraint per soft
// constraint that has not been reified yet. Relaxation variables are
// appended after all existing variables, in soft-constraint order.
Problem ReifySoft(Problem problem);

enum class ParseErrorKind {
  kMalformedHeader,
  kLiteralOutOfRange,
  kNonPositiveWeight,
  kWeightAboveTop,
  kUndeclaredVariable,
  kNonIntegerCoefficient,
  kEmptyDomain,
  kSyntax,
};

std::string_view ParseErrorKindName(ParseErrorKind kind);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, int line, const std::string& what);
  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  ParseErrorKind kind_;
  int line_;
};

// DIMACS WCNF with a `p wcnf <vars> <clauses> <top>` header. Clauses with
// weight `top` are hard. Variable i is named "x<i>".
Problem ParseWcnf(std::istream& in);
Problem ParseWcnf(std::string_view text);

// Native format, one statement per line or separated by ';', '#' comments:
//   int <name> <lo> <hi>
//   bool <name>...
//   clause <[-]name>...
//   linear <coef>*<name> (+|- <coef>*<name>)* <=|>=|= <int>
//   soft <weight> (clause ...|linear ...)
//   minimize <weight>*<name> (+ <weight>*<name>)*
Problem ParseNative(std::istream& in);
Problem ParseNative(std::string_view text);

enum class InputFormat { kAuto, kWcnf, kNative };
InputFormat DetectFormat(std::string_view text);
Problem ParseAny(std::string_view text,
                 InputFormat format = InputFormat::kAuto);

// Writers print the unreified form, so that parsing the output reproduces
// the same Problem.
std::string WriteNative(const Problem& problem);
// Requires a pure MAXSAT problem: Boolean variables, clause constraints only,
// no direct objective terms.
std::string WriteWcnf(const Problem& problem);

// Independent evaluation of a full assignment (one value per variable).
struct Evaluation {
  bool feasible = false;
  uint64_t cost = 0;
};
bool Holds(const Constraint& c, std::span<const int64_t> values);
bool Holds(const BasicConstraint& c, std::span<const int64_t> values);
Evaluation Evaluate(const Problem& problem, std::span<const int64_t> values);

// Sets every relaxation variable to the indicator of its soft constraint
// being violated, the cheapest completion of the other variables.
void CompleteRelaxation(const Problem& problem, std::vector<int64_t>* values);

struct OracleResult {
  enum Status { kOptimal, kInfeasible, kCapExceeded };
  Status status = kInfeasible;
  uint64_t cost = 0;
  std::vector<int64_t> assignment;
};

inline constexpr uint64_t kDefaultOracleCap = uint64_t{1} << 24;

// Exhaustive enumeration over the non-relaxation variables in lexicographic
// order (variable order, ascending values); relaxation variables take their
// cheapest completion. Returns the lexicographically smallest optimum.
OracleResult BruteForceOptimum(const Problem& problem,
                               uint64_t max_space = kDefaultOracleCap);

}  // namespace ucore

#endif  // UCORE_MODEL_H_
