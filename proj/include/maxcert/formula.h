/*
Copyright 2026 The maxcert Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef MAXCERT_FORMULA_H_
#define MAXCERT_FORMULA_H_

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace maxcert {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed DIMACS input. `line` is 1-based, 0 when not attributable.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A variable referenced outside the range an Assignment or formula declares.
class RangeError : public Error {
 public:
  using Error::Error;
};

// An assignment falsifies a hard clause. `clause_index` is 0-based in
// WcnfInstance::hard.
class HardClauseViolation : public Error {
 public:
  explicit HardClauseViolation(std::size_t clause_index)
      : Error("hard clause " + std::to_string(clause_index) + " is falsified"),
        clause_index_(clause_index) {}
  std::size_t clause_index() const { return clause_index_; }

 private:
  std::size_t clause_index_;
};

// A propositional literal over a 1-based variable id.
class Literal {
 public:
  constexpr Literal() = default;
  constexpr Literal(int var, bool negated) : code_(2 * var + (negated ? 1 : 0)) {}

  static constexpr Literal Positive(int var) { return Literal(var, false); }
  static constexpr Literal Negative(int var) { return Literal(var, true); }
  // Signed DIMACS integer; 0 is not a literal.
  static Literal FromDimacs(int dimacs) {
    if (dimacs == 0) throw RangeError("0 is not a literal");
    return Literal(std::abs(dimacs), dimacs < 0);
  }

  constexpr int var() const { return code_ >> 1; }
  constexpr bool negated() const { return (code_ & 1) != 0; }
  constexpr int ToDimacs() const { return negated() ? -var() : var(); }
  // Dense index for per-literal tables: 2 * (var - 1) + negated.
  constexpr std::size_t index() const { return static_cast<std::size_t>(code_ - 2); }

  constexpr Literal operator~() const { return FromCode(code_ ^ 1); }
  constexpr auto operator<=>(const Literal&) const = default;

 private:
  static constexpr Literal FromCode(int code) {
    Literal l;
    l.code_ = code;
    return l;
  }
  int code_ = 0;
};

using Clause = std::vector<Literal>;

std::string ClauseToString(std::span<const Literal> clause);

// Total truth assignment over variables 1..num_vars.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(int num_vars, bool initial = false)
      : values_(static_cast<std::size_t>(num_vars), initial ? 1 : 0) {}

  // Builds an assignment from signed DIMACS literals that mention every
  // variable in 1..num_vars exactly once.
  static Assignment FromDimacs(std::span<const int> literals, int num_vars);

  int num_vars() const { return static_cast<int>(values_.size()); }
  bool value(int var) const;
  void set(int var, bool v);
  void flip(int var) { set(var, !value(var)); }
  bool satisfies(Literal lit) const { return value(lit.var()) != lit.negated(); }

  std::vector<int> ToDimacs() const;
  // Copy restricted to variables 1..num_vars.
  Assignment Restrict(int num_vars) const;

  bool operator==(const Assignment&) const = default;

 private:
  void CheckVar(int var) const;
  std::vector<std::uint8_t> values_;
};

// A CNF formula as handed to the SAT engine or the checker.
struct CnfFormula {
  int num_vars = 0;
  std::vector<Clause> clauses;

  void Add(Clause c) { clauses.push_back(std::move(c)); }
  bool operator==(const CnfFormula&) const = default;
};

// A partial MaxSAT instance. Soft clause i (0-based) has soft_id i + 1.
struct WcnfInstance {
  int num_vars = 0;
  std::vector<Clause> hard;
  std::vector<Clause> soft;

  std::size_t num_soft() const { return soft.size(); }
  const Clause& soft_clause(int soft_id) const;
  bool operator==(const WcnfInstance&) const = default;
};

// Parses DIMACS WCNF (`p wcnf V C TOP`, weights restricted to {1, TOP}) or
// DIMACS CNF (`p cnf V C`, every clause soft). One clause per line.
WcnfInstance ParseWcnf(std::string_view text);
WcnfInstance ParseWcnfFile(const std::string& path);

// Emits the instance as WCNF with top = max(|soft| + 1, 2), hard clauses first.
std::string FormatWcnf(const WcnfInstance& inst);

bool EvaluateClause(std::span<const Literal> clause, const Assignment& a);

// Number of soft clauses falsified by `a`. Throws HardClauseViolation when a
// hard clause is falsified.
int CountFalsifiedSoft(const WcnfInstance& inst, const Assignment& a);

// Throws RangeError when a literal's variable lies outside 1..num_vars.
void CheckClauseRange(std::span<const Literal> clause, int num_vars);

}  // namespace maxcert

template <>
struct std::hash<maxcert::Literal> {
  std::size_t operator()(const maxcert::Literal& l) const noexcept {
    return std::hash<std::size_t>()(l.index());
  }
};

#endif  // MAXCERT_FORMULA_H_
