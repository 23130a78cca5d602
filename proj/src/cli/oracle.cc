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
#include <cstdint>
#include <random>

#include "maxcert/cli.h"

namespace maxcert {

namespace {

struct Masks {
  std::uint32_t pos = 0;
  std::uint32_t neg = 0;
};

Masks ToMasks(const Clause& c) {
  Masks m;
  for (Literal l : c) (l.negated() ? m.neg : m.pos) |= 1u << (l.var() - 1);
  return m;
}

bool Satisfied(const Masks& m, std::uint32_t a) { return (a & m.pos) != 0 || (~a & m.neg) != 0; }

Clause RandomClause(std::mt19937_64& rng, int vars, int width) {
  std::vector<int> pool(static_cast<std::size_t>(vars));
  for (int v = 0; v < vars; ++v) pool[static_cast<std::size_t>(v)] = v + 1;
  Clause c;
  for (int k = 0; k < width; ++k) {
    std::uniform_int_distribution<int> pick(k, vars - 1);
    std::swap(pool[static_cast<std::size_t>(k)], pool[static_cast<std::size_t>(pick(rng))]);
    const bool neg = std::bernoulli_distribution(0.5)(rng);
    c.push_back(Literal(pool[static_cast<std::size_t>(k)], neg));
  }
  return c;
}

}  // namespace

std::optional<int> BruteForceOptimum(const WcnfInstance& inst) {
  if (inst.num_vars > kOracleMaxVars) {
    throw RangeError("oracle limited to " + std::to_string(kOracleMaxVars) + " variables, instance has " +
                     std::to_string(inst.num_vars));
  }
  std::vector<Masks> hard;
  std::vector<Masks> soft;
  for (const Clause& c : inst.hard) hard.push_back(ToMasks(c));
  for (const Clause& c : inst.soft) soft.push_back(ToMasks(c));

  std::optional<int> best;
  const std::uint32_t total = 1u << inst.num_vars;
  for (std::uint32_t a = 0; a < total; ++a) {
    if (!std::all_of(hard.begin(), hard.end(), [a](const Masks& m) { return Satisfied(m, a); })) {
      continue;
    }
    int cost = 0;
    for (const Masks& m : soft) cost += Satisfied(m, a) ? 0 : 1;
    if (!best || cost < *best) best = cost;
    if (best == 0) break;
  }
  return best;
}

WcnfInstance GenerateInstance(const GenParams& p) {
  if (p.vars < 1 || p.vars > kOracleMaxVars) {
    throw RangeError("--vars must lie in 1.." + std::to_string(kOracleMaxVars));
  }
  if (p.width < 1 || p.width > p.vars) throw RangeError("--width must lie in 1..vars");
  if (p.hard < 0 || p.soft < 0) throw RangeError("clause counts must be non-negative");

  constexpr int kMaxRounds = 1000;
  std::mt19937_64 rng(p.seed);
  WcnfInstance inst;
  inst.num_vars = p.vars;
  for (int round = 0;; ++round) {
    if (round == kMaxRounds) {
      throw Error("no satisfiable hard part after " + std::to_string(kMaxRounds) + " rounds");
    }
    inst.hard.clear();
    for (int i = 0; i < p.hard; ++i) inst.hard.push_back(RandomClause(rng, p.vars, p.width));
    WcnfInstance hard_only{p.vars, inst.hard, {}};
    if (BruteForceOptimum(hard_only)) break;
  }
  std::uniform_int_distribution<int> soft_width(1, p.width);
  for (int i = 0; i < p.soft; ++i) inst.soft.push_back(RandomClause(rng, p.vars, soft_width(rng)));
  return inst;
}

}  // namespace maxcert
