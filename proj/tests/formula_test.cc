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

#include <gtest/gtest.h>

#include <random>

#include "maxcert/formula.h"

namespace maxcert {
namespace {

const char* kFiveCycle =
    "p wcnf 5 10 6\n"
    "6 1 2 0\n6 2 3 0\n6 3 4 0\n6 4 5 0\n6 1 5 0\n"
    "1 -1 0\n1 -2 0\n1 -3 0\n1 -4 0\n1 -5 0\n";

Assignment Make(std::vector<int> lits) {
  return Assignment::FromDimacs(lits, static_cast<int>(lits.size()));
}

TEST(Literal, ComplementIsInvolutive) {
  const Literal x = Literal::Positive(3);
  EXPECT_NE(x, ~x);
  EXPECT_EQ(x, ~~x);
  EXPECT_EQ((~x).ToDimacs(), -3);
  EXPECT_EQ(Literal::FromDimacs(-7).var(), 7);
  EXPECT_TRUE(Literal::FromDimacs(-7).negated());
  EXPECT_THROW(Literal::FromDimacs(0), RangeError);
}

TEST(ParseWcnf, SmallestMixedInstance) {
  const WcnfInstance inst = ParseWcnf("p wcnf 1 2 2\n2 1 0\n1 -1 0\n");
  EXPECT_EQ(inst.num_vars, 1);
  ASSERT_EQ(inst.hard.size(), 1u);
  ASSERT_EQ(inst.soft.size(), 1u);
  EXPECT_EQ(inst.hard[0], Clause{Literal::Positive(1)});
  EXPECT_EQ(inst.soft[0], Clause{Literal::Negative(1)});
}

TEST(ParseWcnf, FiveCycle) {
  const WcnfInstance inst = ParseWcnf(kFiveCycle);
  EXPECT_EQ(inst.num_vars, 5);
  EXPECT_EQ(inst.hard.size(), 5u);
  EXPECT_EQ(inst.soft.size(), 5u);
  EXPECT_EQ(inst.soft_clause(3), Clause{Literal::Negative(3)});
}

TEST(ParseWcnf, RejectsOtherWeights) {
  EXPECT_THROW(ParseWcnf("p wcnf 1 1 2\n3 1 0\n"), ParseError);
}

TEST(ParseWcnf, RejectsMalformedInput) {
  EXPECT_THROW(ParseWcnf("p wcnf 1 1\n1 1 0\n"), ParseError);         // header
  EXPECT_THROW(ParseWcnf("p wcnf 2 1 3\n1 3 0\n"), ParseError);       // range
  EXPECT_THROW(ParseWcnf("p wcnf 2 1 3\n1 1 2\n"), ParseError);       // no 0
  EXPECT_THROW(ParseWcnf("p wcnf 2 1 3\n1 1 -1 0\n"), ParseError);    // tautology
  EXPECT_THROW(ParseWcnf("p wcnf 2 2 3\n1 1 0\n"), ParseError);       // count
  EXPECT_THROW(ParseWcnf("1 1 0\n"), ParseError);                     // no header
}

TEST(ParseWcnf, ErrorsCarryLineNumbers) {
  try {
    ParseWcnf("c comment\np wcnf 2 1 3\n1 1 x 0\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(ParseWcnf, PureCnfIsAllSoft) {
  const WcnfInstance inst = ParseWcnf("p cnf 1 2\n1 0\n0\n");
  EXPECT_TRUE(inst.hard.empty());
  ASSERT_EQ(inst.soft.size(), 2u);
  EXPECT_TRUE(inst.soft[1].empty());
}

TEST(ParseWcnf, AcceptsCrlfAndComments) {
  const WcnfInstance inst = ParseWcnf("c x\r\np wcnf 2 2 3\r\n3 1 2 0\r\nc y\r\n1 -2 0\r\n");
  EXPECT_EQ(inst.hard.size(), 1u);
  EXPECT_EQ(inst.soft.size(), 1u);
}

TEST(FormatWcnf, RoundTrips) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    WcnfInstance inst;
    inst.num_vars = 6;
    for (int i = 0; i < 8; ++i) {
      Clause c;
      const int width = static_cast<int>(rng() % 4);
      for (int v = 1; v <= 6 && static_cast<int>(c.size()) < width; ++v) {
        if (rng() % 2) c.push_back(Literal(v, rng() % 2));
      }
      (rng() % 3 == 0 ? inst.hard : inst.soft).push_back(c);
    }
    EXPECT_EQ(ParseWcnf(FormatWcnf(inst)), inst);
  }
}

TEST(EvaluateClause, Basics) {
  const Clause c{Literal::Positive(1), Literal::Negative(2)};
  EXPECT_TRUE(EvaluateClause(c, Make({-1, -2})));
  EXPECT_FALSE(EvaluateClause(Clause{}, Make({1})));
  EXPECT_FALSE(EvaluateClause(Clause{Literal::Negative(1)}, Make({1})));
  EXPECT_THROW(EvaluateClause(Clause{Literal::Positive(4)}, Make({1})), RangeError);
}

TEST(EvaluateClause, MonotoneInSatisfiedLiterals) {
  const Assignment a = Make({1, -2, 3});
  Clause c{Literal::Negative(1)};
  const bool before = EvaluateClause(c, a);
  c.push_back(Literal::Negative(2));
  EXPECT_TRUE(EvaluateClause(c, a));
  EXPECT_FALSE(before);
}

TEST(CountFalsifiedSoft, FiveCycle) {
  const WcnfInstance inst = ParseWcnf(kFiveCycle);
  EXPECT_EQ(CountFalsifiedSoft(inst, Make({1, -2, 3, 4, -5})), 3);
  try {
    CountFalsifiedSoft(inst, Make({-1, -2, -3, -4, -5}));
    FAIL();
  } catch (const HardClauseViolation& e) {
    EXPECT_EQ(e.clause_index(), 0u);
  }
}

TEST(CountFalsifiedSoft, AllSoft) {
  const WcnfInstance inst = ParseWcnf("p cnf 1 1\n1 0\n");
  EXPECT_EQ(CountFalsifiedSoft(inst, Make({1})), 0);
}

TEST(CountFalsifiedSoft, FiveCycleMinimumIsThree) {
  const WcnfInstance inst = ParseWcnf(kFiveCycle);
  int best = 99;
  for (int mask = 0; mask < 32; ++mask) {
    std::vector<int> lits;
    for (int v = 1; v <= 5; ++v) lits.push_back((mask >> (v - 1)) & 1 ? v : -v);
    try {
      best = std::min(best, CountFalsifiedSoft(inst, Make(lits)));
    } catch (const HardClauseViolation&) {
    }
  }
  EXPECT_EQ(best, 3);
}

TEST(Assignment, FromDimacsRequiresTotality) {
  EXPECT_THROW(Assignment::FromDimacs(std::vector<int>{1}, 2), RangeError);
  EXPECT_THROW(Assignment::FromDimacs(std::vector<int>{1, -1}, 2), RangeError);
  EXPECT_EQ(Make({-1, 2}).ToDimacs(), (std::vector<int>{-1, 2}));
  EXPECT_EQ(Make({-1, 2, 3}).Restrict(2), Make({-1, 2}));
}

}  // namespace
}  // namespace maxcert
