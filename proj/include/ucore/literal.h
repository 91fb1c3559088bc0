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

#ifndef UCORE_LITERAL_H_
#define UCORE_LITERAL_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace ucore {

// Index of a Boolean atom in the domain store.
using Var = int32_t;
inline constexpr Var kNoVar = -1;

// A Boolean atom or its negation. Every solver-level inference is expressed
// over these: Boolean model variables own one atom, integer model variables
// own one atom per bound [x >= v] and per interior value [x = v].
class Lit {
 public:
  constexpr Lit() : code_(-2) {}
  constexpr Lit(Var v, bool positive) : code_(2 * v + (positive ? 0 : 1)) {}

  static constexpr Lit FromIndex(int index) {
    Lit l;
    l.code_ = index;
    return l;
  }

  constexpr Var var() const { return code_ >> 1; }
  constexpr bool positive() const { return (code_ & 1) == 0; }
  constexpr int index() const { return code_; }
  constexpr bool valid() const { return code_ >= 0; }
  constexpr Lit operator~() const { return FromIndex(code_ ^ 1); }

  friend constexpr bool operator==(Lit a, Lit b) = default;
  friend constexpr auto operator<=>(Lit a, Lit b) = default;

 private:
  int32_t code_;
};

enum class LBool : int8_t { kFalse = 0, kTrue = 1, kUndef = 2 };

// Model-level literal over a declared variable: [x = v], [x != v],
// [x >= v] or [x <= v]. For a Boolean variable the true-literal is
// [b >= 1] and the false-literal is [b <= 0].
enum class LitKind : uint8_t { kEq, kNeq, kGeq, kLeq };

struct Literal {
  int var = -1;
  LitKind kind = LitKind::kGeq;
  int64_t value = 1;

  static Literal BoolTrue(int var) { return {var, LitKind::kGeq, 1}; }
  static Literal BoolFalse(int var) { return {var, LitKind::kLeq, 0}; }

  Literal Negated() const {
    switch (kind) {
      case LitKind::kEq:
        return {var, LitKind::kNeq, value};
      case LitKind::kNeq:
        return {var, LitKind::kEq, value};
      case LitKind::kGeq:
        return {var, LitKind::kLeq, value - 1};
      case LitKind::kLeq:
        return {var, LitKind::kGeq, value + 1};
    }
    return *this;
  }

  // True iff `x` satisfies this literal.
  bool HoldsFor(int64_t x) const {
    switch (kind) {
      case LitKind::kEq:
        return x == value;
      case LitKind::kNeq:
        return x != value;
      case LitKind::kGeq:
        return x >= value;
      case LitKind::kLeq:
        return x <= value;
    }
    return false;
  }

  friend bool operator==(const Literal&, const Literal&) = default;
};

}  // namespace ucore

template <>
struct std::hash<ucore::Lit> {
  size_t operator()(ucore::Lit l) const noexcept {
    return std::hash<int>()(l.index());
  }
};

#endif  // UCORE_LITERAL_H_
