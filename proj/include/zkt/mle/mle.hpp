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

#include <optional>
#include <span>
#include <vector>

#include "zkt/common/bits.hpp"
#include "zkt/common/errors.hpp"

namespace zkt {

// Claim that the MLE of some tensor takes value at point.
template <class F>
struct EvalClaim {
  std::vector<F> point;
  F value;
};


// eq(u, x) for every x in {0,1}^d, with u[0] the most significant bit.
template <class F>
std::vector<F> eq_table(std::span<const F> u) {
  std::vector<F> t(std::size_t{1} << u.size());
  t[0] = F::one();
  std::size_t len = 1;
  for (const F& uk : u) {
    for (std::size_t i = len; i-- > 0;) {
      F hi = t[i] * uk;
      t[2 * i] = t[i] - hi;
      t[2 * i + 1] = hi;
    }
    len *= 2;
  }
  return t;
}

template <class F>
std::vector<F> eq_table(const std::vector<F>& u) {
  return eq_table(std::span<const F>(u));
}

template <class F>
F eq_eval(std::span<const F> u, std::span<const F> v) {
  if (u.size() != v.size()) throw ShapeError("eq: dimension mismatch");
  F acc = F::one();
  for (std::size_t i = 0; i < u.size(); ++i) {
    F uv = u[i] * v[i];
    acc *= uv + uv + F::one() - u[i] - v[i];
  }
  return acc;
}

template <class F>
F eq_eval(const std::vector<F>& u, const std::vector<F>& v) {
  return eq_eval(std::span<const F>(u), std::span<const F>(v));
}

// Binds the leading variables to prefix; result has size/2^|prefix| entries.
template <class F>
std::vector<F> fold_prefix(std::span<const F> data, std::span<const F> prefix) {
  if (!is_pow2(data.size()) || (data.size() >> prefix.size()) == 0) {
    throw ShapeError("fold_prefix: point longer than table");
  }
  std::vector<F> t(data.begin(), data.end());
  std::size_t len = t.size();
  for (const F& r : prefix) {
    std::size_t half = len / 2;
    for (std::size_t i = 0; i < half; ++i) t[i] += r * (t[i + half] - t[i]);
    len = half;
  }
  t.resize(len);
  return t;
}

// Binds the trailing variables to suffix.
template <class F>
std::vector<F> fold_suffix(std::span<const F> data, std::span<const F> suffix) {
  if (!is_pow2(data.size()) || (data.size() >> suffix.size()) == 0) {
    throw ShapeError("fold_suffix: point longer than table");
  }
  std::vector<F> t(data.begin(), data.end());
  std::size_t len = t.size();
  for (std::size_t k = suffix.size(); k-- > 0;) {
    const F& r = suffix[k];
    std::size_t half = len / 2;
    for (std::size_t i = 0; i < half; ++i) t[i] = t[2 * i] + r * (t[2 * i + 1] - t[2 * i]);
    len = half;
  }
  t.resize(len);
  return t;
}

template <class F>
F mle_evaluate(std::span<const F> data, std::span<const F> point) {
  if (data.size() != (std::size_t{1} << point.size())) {
    throw ShapeError("mle_evaluate: table has " + std::to_string(data.size()) + " entries, point has " +
                     std::to_string(point.size()) + " coordinates");
  }
  return fold_prefix(data, point)[0];
}

template <class F>
F mle_evaluate(const std::vector<F>& data, const std::vector<F>& point) {
  return mle_evaluate(std::span<const F>(data), std::span<const F>(point));
}

// Binds an arbitrary subset of variables; unbound ones keep their relative
// order in the result.
template <class F>
std::vector<F> bind_variables(std::span<const F> data, const std::vector<std::optional<F>>& assignment) {
  const std::size_t n = assignment.size();
  if (data.size() != (std::size_t{1} << n)) throw ShapeError("bind_variables: arity mismatch");
  std::vector<F> t(data.begin(), data.end());
  std::size_t vars = n;
  // Highest position first so lower positions stay put.
  for (std::size_t k = n; k-- > 0;) {
    if (!assignment[k]) continue;
    const F& r = *assignment[k];
    std::size_t stride = std::size_t{1} << (vars - 1 - k);
    std::size_t blocks = t.size() / (2 * stride);
    std::vector<F> next(t.size() / 2);
    for (std::size_t b = 0; b < blocks; ++b) {
      const F* lo = &t[2 * b * stride];
      const F* hi = lo + stride;
      F* out = &next[b * stride];
      for (std::size_t i = 0; i < stride; ++i) out[i] = lo[i] + r * (hi[i] - lo[i]);
    }
    t.swap(next);
    --vars;
  }
  return t;
}

// out variable j is input variable order[j].
template <class F>
std::vector<F> permute_variables(std::span<const F> data, const std::vector<std::size_t>& order) {
  const std::size_t n = order.size();
  if (data.size() != (std::size_t{1} << n)) throw ShapeError("permute_variables: arity mismatch");
  std::vector<F> out(data.size());
  for (std::size_t x = 0; x < data.size(); ++x) {
    std::size_t src = 0;
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t bit = (x >> (n - 1 - j)) & 1;
      src |= bit << (n - 1 - order[j]);
    }
    out[x] = data[src];
  }
  return out;
}

}  // namespace zkt
