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

#include "maxcert/cardenc.h"

namespace maxcert {

int SequentialCounterAuxCount(int n, int k) {
  if (k <= 0 || k >= n) return 0;
  return k * (n - 1);
}

int SequentialCounterClauseCount(int n, int k) {
  if (n == 0 || k >= n) return 0;
  if (k == 0) return n;
  return 2 * n * k + n - 3 * k - 1;
}

AtMostEncoding EncodeAtMost(std::span<const Literal> inputs, int bound, int aux_first) {
  if (bound < 0) throw EncodingError("negative cardinality bound");
  if (aux_first < 1) throw EncodingError("auxiliary variables must start at 1 or above");

  AtMostEncoding enc;
  enc.inputs.assign(inputs.begin(), inputs.end());
  enc.bound = bound;
  enc.aux_first = aux_first;

  const int n = static_cast<int>(inputs.size());
  const int k = bound;
  enc.aux_count = SequentialCounterAuxCount(n, k);
  for (Literal x : inputs) {
    if (x.var() == aux_first ||
        (x.var() >= aux_first && x.var() < aux_first + enc.aux_count)) {
      throw EncodingError("auxiliary range starting at " + std::to_string(aux_first) +
                          " collides with input variable " + std::to_string(x.var()));
    }
  }

  if (n == 0 || k >= n) return enc;
  if (k == 0) {
    for (Literal x : inputs) enc.clauses.push_back({~x});
    return enc;
  }

  auto x = [&](int i) { return inputs[static_cast<std::size_t>(i - 1)]; };
  auto s = [&](int i, int j) { return Literal::Positive(aux_first + (i - 1) * k + (j - 1)); };
  auto& out = enc.clauses;

  out.push_back({~x(1), s(1, 1)});
  for (int j = 2; j <= k; ++j) out.push_back({~s(1, j)});
  for (int i = 2; i < n; ++i) {
    out.push_back({~x(i), s(i, 1)});
    out.push_back({~s(i - 1, 1), s(i, 1)});
    for (int j = 2; j <= k; ++j) {
      out.push_back({~x(i), ~s(i - 1, j - 1), s(i, j)});
      out.push_back({~s(i - 1, j), s(i, j)});
    }
    out.push_back({~x(i), ~s(i - 1, k)});
  }
  out.push_back({~x(n), ~s(n - 1, k)});
  return enc;
}

AtMostEncoding EncodeStrictlyLess(std::span<const Literal> inputs, int bound, int aux_first) {
  if (bound < 1) {
    throw EncodingError("strict bound " + std::to_string(bound) + " admits no assignment");
  }
  return EncodeAtMost(inputs, bound - 1, aux_first);
}

}  // namespace maxcert
