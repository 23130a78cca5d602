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

#include "maxcert/formula.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace maxcert {

std::string ClauseToString(std::span<const Literal> clause) {
  std::string out = "(";
  for (std::size_t i = 0; i < clause.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(clause[i].ToDimacs());
  }
  out += ')';
  return out;
}

Assignment Assignment::FromDimacs(std::span<const int> literals, int num_vars) {
  if (num_vars < 0) throw RangeError("negative variable count");
  if (literals.size() != static_cast<std::size_t>(num_vars)) {
    throw RangeError("assignment lists " + std::to_string(literals.size()) +
                     " literals for " + std::to_string(num_vars) + " variables");
  }
  Assignment a(num_vars);
  std::vector<bool> seen(static_cast<std::size_t>(num_vars) + 1, false);
  for (int d : literals) {
    const int v = std::abs(d);
    if (d == 0 || v > num_vars) {
      throw RangeError("assignment literal " + std::to_string(d) + " out of range");
    }
    if (seen[v]) throw RangeError("variable " + std::to_string(v) + " assigned twice");
    seen[v] = true;
    a.set(v, d > 0);
  }
  return a;
}

void Assignment::CheckVar(int var) const {
  if (var < 1 || var > num_vars()) {
    throw RangeError("variable " + std::to_string(var) + " outside assignment range 1.." +
                     std::to_string(num_vars()));
  }
}

bool Assignment::value(int var) const {
  CheckVar(var);
  return values_[static_cast<std::size_t>(var - 1)] != 0;
}

void Assignment::set(int var, bool v) {
  CheckVar(var);
  values_[static_cast<std::size_t>(var - 1)] = v ? 1 : 0;
}

std::vector<int> Assignment::ToDimacs() const {
  std::vector<int> out;
  out.reserve(values_.size());
  for (int v = 1; v <= num_vars(); ++v) out.push_back(value(v) ? v : -v);
  return out;
}

Assignment Assignment::Restrict(int num_vars) const {
  if (num_vars > this->num_vars()) throw RangeError("cannot widen an assignment");
  Assignment out(num_vars);
  std::copy_n(values_.begin(), num_vars, out.values_.begin());
  return out;
}

const Clause& WcnfInstance::soft_clause(int soft_id) const {
  if (soft_id < 1 || static_cast<std::size_t>(soft_id) > soft.size()) {
    throw RangeError("soft_id " + std::to_string(soft_id) + " out of range");
  }
  return soft[static_cast<std::size_t>(soft_id - 1)];
}

void CheckClauseRange(std::span<const Literal> clause, int num_vars) {
  for (Literal l : clause) {
    if (l.var() < 1 || l.var() > num_vars) {
      throw RangeError("literal " + std::to_string(l.ToDimacs()) + " outside 1.." +
                       std::to_string(num_vars));
    }
  }
}

namespace {

std::vector<std::string_view> Tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::int64_t ToInt(std::string_view tok, std::size_t line_no) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line_no, "expected integer, got '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

WcnfInstance ParseWcnf(std::string_view text) {
  WcnfInstance inst;
  bool have_header = false;
  bool weighted = false;
  std::int64_t declared_clauses = 0;
  std::int64_t top = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const auto toks = Tokenize(line);
    if (toks.empty() || toks[0][0] == 'c') continue;

    if (toks[0] == "p") {
      if (have_header) throw ParseError(line_no, "duplicate header");
      if (toks.size() < 4) throw ParseError(line_no, "malformed header");
      if (toks[1] == "wcnf") {
        if (toks.size() != 5) throw ParseError(line_no, "wcnf header needs <vars> <clauses> <top>");
        weighted = true;
        top = ToInt(toks[4], line_no);
        if (top < 2) throw ParseError(line_no, "top weight must be at least 2");
      } else if (toks[1] == "cnf") {
        if (toks.size() != 4) throw ParseError(line_no, "cnf header needs <vars> <clauses>");
      } else {
        throw ParseError(line_no, "unknown format '" + std::string(toks[1]) + "'");
      }
      const std::int64_t vars = ToInt(toks[2], line_no);
      declared_clauses = ToInt(toks[3], line_no);
      if (vars < 0 || vars > (1 << 28) || declared_clauses < 0) {
        throw ParseError(line_no, "malformed header counts");
      }
      inst.num_vars = static_cast<int>(vars);
      have_header = true;
      continue;
    }

    if (!have_header) throw ParseError(line_no, "clause before header");
    if (ToInt(toks.back(), line_no) != 0) {
      throw ParseError(line_no, "clause not terminated by 0");
    }

    std::size_t first_lit = 0;
    bool hard = false;
    if (weighted) {
      if (toks.size() < 2) throw ParseError(line_no, "missing weight");
      const std::int64_t w = ToInt(toks[0], line_no);
      if (w == top) {
        hard = true;
      } else if (w != 1) {
        throw ParseError(line_no, "unsupported weight " + std::to_string(w) +
                                      " (only 1 and top are allowed)");
      }
      first_lit = 1;
    }

    Clause clause;
    for (std::size_t t = first_lit; t + 1 < toks.size(); ++t) {
      const std::int64_t d = ToInt(toks[t], line_no);
      if (d == 0) throw ParseError(line_no, "0 inside clause");
      if (std::abs(d) > inst.num_vars) {
        throw ParseError(line_no, "literal " + std::to_string(d) + " out of range");
      }
      const Literal lit = Literal::FromDimacs(static_cast<int>(d));
      if (std::find(clause.begin(), clause.end(), ~lit) != clause.end()) {
        throw ParseError(line_no, "tautological clause");
      }
      if (std::find(clause.begin(), clause.end(), lit) == clause.end()) clause.push_back(lit);
    }
    (hard ? inst.hard : inst.soft).push_back(std::move(clause));
  }

  if (!have_header) throw ParseError(0, "missing header");
  const auto found = static_cast<std::int64_t>(inst.hard.size() + inst.soft.size());
  if (found != declared_clauses) {
    throw ParseError(0, "header declares " + std::to_string(declared_clauses) +
                            " clauses, found " + std::to_string(found));
  }
  return inst;
}

WcnfInstance ParseWcnfFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseWcnf(ss.str());
}

std::string FormatWcnf(const WcnfInstance& inst) {
  const std::size_t top = std::max<std::size_t>(inst.soft.size() + 1, 2);
  std::ostringstream out;
  out << "p wcnf " << inst.num_vars << ' ' << inst.hard.size() + inst.soft.size() << ' '
      << top << '\n';
  auto emit = [&](const Clause& c, std::size_t w) {
    out << w;
    for (Literal l : c) out << ' ' << l.ToDimacs();
    out << " 0\n";
  };
  for (const Clause& c : inst.hard) emit(c, top);
  for (const Clause& c : inst.soft) emit(c, 1);
  return out.str();
}

bool EvaluateClause(std::span<const Literal> clause, const Assignment& a) {
  bool sat = false;
  for (Literal l : clause) sat = a.satisfies(l) || sat;
  return sat;
}

int CountFalsifiedSoft(const WcnfInstance& inst, const Assignment& a) {
  for (std::size_t i = 0; i < inst.hard.size(); ++i) {
    if (!EvaluateClause(inst.hard[i], a)) throw HardClauseViolation(i);
  }
  int falsified = 0;
  for (const Clause& c : inst.soft) {
    if (!EvaluateClause(c, a)) ++falsified;
  }
  return falsified;
}

}  // namespace maxcert
