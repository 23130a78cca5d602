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

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>

#include "maxcert/checker.h"

namespace maxcert {

ParsedProof ParseDrup(std::string_view text) {
  ParsedProof out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::size_t i = line.find_first_not_of(" \t");
    if (i == std::string_view::npos || line[i] == 'c') continue;

    ProofStep step;
    if (line[i] == 'd' && (i + 1 == line.size() || line[i + 1] == ' ' || line[i + 1] == '\t')) {
      step.kind = ProofStep::Kind::kDelete;
      ++i;
    }
    bool terminated = false;
    while (true) {
      i = line.find_first_not_of(" \t", i);
      if (i == std::string_view::npos) break;
      if (terminated) throw DrupParseError(line_no, "text after the terminating 0");
      int value = 0;
      const auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), value);
      const std::size_t next = static_cast<std::size_t>(ptr - line.data());
      if (ec != std::errc() || (next < line.size() && line[next] != ' ' && line[next] != '\t')) {
        throw DrupParseError(line_no, "expected an integer literal");
      }
      i = next;
      if (value == 0) {
        terminated = true;
      } else {
        step.clause.push_back(Literal::FromDimacs(value));
      }
    }
    if (!terminated) throw DrupParseError(line_no, "missing terminating 0");
    out.trace.steps.push_back(std::move(step));
    out.lines.push_back(line_no);
  }
  return out;
}

namespace {

std::vector<int> ClauseKey(const Clause& c) {
  std::vector<int> key;
  key.reserve(c.size());
  for (Literal l : c) key.push_back(l.ToDimacs());
  std::sort(key.begin(), key.end());
  key.erase(std::unique(key.begin(), key.end()), key.end());
  return key;
}

// Clause multiset with two-watched-literal unit propagation. Every RUP query
// starts from the empty assignment.
class RupDatabase {
 public:
  explicit RupDatabase(int num_vars)
      : value_(static_cast<std::size_t>(num_vars) + 1, 0),
        watches_(2 * static_cast<std::size_t>(num_vars)) {}

  void Add(const Clause& clause) {
    std::vector<int> key = ClauseKey(clause);
    const auto id = static_cast<std::uint32_t>(clauses_.size());
    Stored s;
    for (int d : key) s.lits.push_back(Literal::FromDimacs(d));
    if (s.lits.empty()) {
      ++empty_count_;
    } else if (s.lits.size() == 1) {
      units_.push_back(id);
    } else {
      watches_[s.lits[0].index()].push_back(id);
      watches_[s.lits[1].index()].push_back(id);
    }
    clauses_.push_back(std::move(s));
    by_key_[std::move(key)].push_back(id);
  }

  bool Remove(const Clause& clause) {
    auto it = by_key_.find(ClauseKey(clause));
    if (it == by_key_.end() || it->second.empty()) return false;
    const std::uint32_t id = it->second.back();
    it->second.pop_back();
    Stored& s = clauses_[id];
    s.alive = false;
    if (s.lits.empty()) --empty_count_;
    return true;
  }

  bool IsRup(const Clause& clause) {
    if (empty_count_ > 0) return true;
    bool conflict = false;
    for (Literal l : clause) {
      if (Value(l) > 0) {
        conflict = true;  // tautology
        break;
      }
      if (Value(l) == 0) Assign(~l);
    }
    if (!conflict) {
      for (std::uint32_t id : units_) {
        const Stored& s = clauses_[id];
        if (!s.alive) continue;
        const int v = Value(s.lits[0]);
        if (v < 0) {
          conflict = true;
          break;
        }
        if (v == 0) Assign(s.lits[0]);
      }
    }
    if (!conflict) conflict = Propagate();
    for (Literal l : trail_) value_[static_cast<std::size_t>(l.var())] = 0;
    trail_.clear();
    head_ = 0;
    return conflict;
  }

 private:
  struct Stored {
    std::vector<Literal> lits;
    bool alive = true;
  };

  int Value(Literal l) const {
    const int v = value_[static_cast<std::size_t>(l.var())];
    return l.negated() ? -v : v;
  }

  void Assign(Literal l) {
    value_[static_cast<std::size_t>(l.var())] = l.negated() ? -1 : 1;
    trail_.push_back(l);
  }

  bool Propagate() {
    while (head_ < trail_.size()) {
      const Literal falsified = ~trail_[head_++];
      std::vector<std::uint32_t>& ws = watches_[falsified.index()];
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < ws.size()) {
        const std::uint32_t id = ws[i++];
        Stored& c = clauses_[id];
        if (!c.alive) continue;
        if (c.lits[0] == falsified) std::swap(c.lits[0], c.lits[1]);
        if (Value(c.lits[0]) > 0) {
          ws[j++] = id;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.lits.size(); ++k) {
          if (Value(c.lits[k]) >= 0) {
            std::swap(c.lits[1], c.lits[k]);
            watches_[c.lits[1].index()].push_back(id);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = id;
        if (Value(c.lits[0]) < 0) {
          while (i < ws.size()) ws[j++] = ws[i++];
          ws.resize(j);
          return true;
        }
        Assign(c.lits[0]);
      }
      ws.resize(j);
    }
    return false;
  }

  std::vector<int> value_;
  std::vector<std::vector<std::uint32_t>> watches_;
  std::vector<Stored> clauses_;
  std::vector<std::uint32_t> units_;
  std::map<std::vector<int>, std::vector<std::uint32_t>> by_key_;
  int empty_count_ = 0;
  std::vector<Literal> trail_;
  std::size_t head_ = 0;
};

}  // namespace

Verdict CheckRefutation(const CnfFormula& f, const ParsedProof& proof) {
  for (std::size_t i = 0; i < f.clauses.size(); ++i) {
    for (Literal l : f.clauses[i]) {
      if (l.var() < 1 || l.var() > f.num_vars) {
        Witness w;
        w.clause_index = static_cast<int>(i);
        return Verdict::Invalid(Reason::kStructureError, "formula literal out of range", w);
      }
    }
  }
  RupDatabase db(f.num_vars);
  for (const Clause& c : f.clauses) db.Add(c);

  const auto& steps = proof.trace.steps;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const ProofStep& step = steps[i];
    Witness w;
    w.proof_line = i < proof.lines.size() ? proof.lines[i] : static_cast<int>(i) + 1;
    for (Literal l : step.clause) {
      if (l.var() > f.num_vars) {
        return Verdict::Invalid(Reason::kStructureError,
                                "proof literal " + std::to_string(l.ToDimacs()) +
                                    " outside the instance's variables",
                                w);
      }
    }
    if (step.kind == ProofStep::Kind::kDelete) {
      if (!db.Remove(step.clause)) {
        return Verdict::Invalid(Reason::kProofDeletesUnknownClause,
                                "deletes clause " + ClauseToString(step.clause) +
                                    " which is not in the database",
                                w);
      }
      continue;
    }
    if (!db.IsRup(step.clause)) {
      return Verdict::Invalid(Reason::kRupStepFailed,
                              "clause " + ClauseToString(step.clause) + " is not RUP", w);
    }
    db.Add(step.clause);
  }
  if (!proof.trace.EndsWithEmptyClause()) {
    return Verdict::Invalid(Reason::kProofMissingEmptyClause,
                            "proof does not end with the empty clause");
  }
  return Verdict::Valid();
}

Verdict CheckUnsatCertificate(const CnfFormula& f, std::string_view proof_text) {
  ParsedProof proof;
  try {
    proof = ParseDrup(proof_text);
  } catch (const DrupParseError& e) {
    Witness w;
    w.proof_line = e.line();
    return Verdict::Invalid(Reason::kStructureError, e.what(), w);
  }
  return CheckRefutation(f, proof);
}

}  // namespace maxcert
