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

#ifndef MAXCERT_CARDENC_H_
#define MAXCERT_CARDENC_H_

#include <span>
#include <string_view>
#include <vector>

#include "maxcert/formula.h"

namespace maxcert {

class EncodingError : public Error {
 public:
  using Error::Error;
};

// Identifier recorded in run manifests for the encoding below.
inline constexpr std::string_view kSequentialCounterId = "sequential_counter";

// CNF for sum(inputs) <= bound. Auxiliary variables occupy
// [aux_first, aux_first + aux_count).
struct AtMostEncoding {
  std::vector<Clause> clauses;
  int aux_first = 0;
  int aux_count = 0;
  std::vector<Literal> inputs;
  int bound = 0;

  // First variable id not used by the encoding.
  int next_free_var() const { return aux_first + aux_count; }
};

// Sequential counter (Sinz 2005) over n inputs with bound k.
//
//   k == 0        : n unit clauses (~x_i), no auxiliaries
//   k >= n        : no clauses
//   0 < k < n     : k * (n - 1) auxiliaries s(i, j), i in 1..n-1, j in 1..k,
//                   2nk + n - 3k - 1 clauses
//
// s(i, j) is allocated at aux_first + (i - 1) * k + (j - 1). Output is a pure
// function of the arguments.
AtMostEncoding EncodeAtMost(std::span<const Literal> inputs, int bound, int aux_first);

// sum(inputs) < bound, i.e. EncodeAtMost(inputs, bound - 1). bound must be >= 1.
AtMostEncoding EncodeStrictlyLess(std::span<const Literal> inputs, int bound, int aux_first);

// Closed forms for the sequential counter (valid for every n, k >= 0).
int SequentialCounterAuxCount(int n, int k);
int SequentialCounterClauseCount(int n, int k);

}  // namespace maxcert

#endif  // MAXCERT_CARDENC_H_
