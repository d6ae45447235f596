// Copyright 2026 The zkt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <vector>

#include "zkt/common/errors.hpp"

namespace zkt {

// Montgomery's trick: one inversion plus 3(n-1) multiplications.
template <class F>
std::vector<F> batch_inverse(std::span<const F> xs) {
  std::vector<F> prefix(xs.size());
  F acc = F::one();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].is_zero()) throw DivisionByZero(i);
    prefix[i] = acc;
    acc *= xs[i];
  }
  F inv = acc.inverse();
  std::vector<F> out(xs.size());
  for (std::size_t i = xs.size(); i-- > 0;) {
    out[i] = inv * prefix[i];
    inv *= xs[i];
  }
  return out;
}

template <class F>
std::vector<F> batch_inverse(const std::vector<F>& xs) {
  return batch_inverse(std::span<const F>(xs));
}

}  // namespace zkt
