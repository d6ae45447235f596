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

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "zkt/common/errors.hpp"

namespace zkt::oracle {

// Multilinear extension by direct summation of Lagrange weights. Quadratic
// in the table size; intended only as a cross-check.
template <class F>
F mle_bruteforce(std::span<const F> data, std::span<const F> point) {
  const std::size_t n = point.size();
  if (data.size() != (std::size_t{1} << n)) throw ShapeError("mle_bruteforce: arity mismatch");
  F acc = F::zero();
  for (std::size_t x = 0; x < data.size(); ++x) {
    F w = F::one();
    for (std::size_t k = 0; k < n; ++k) {
      bool bit = (x >> (n - 1 - k)) & 1;
      w *= bit ? point[k] : F::one() - point[k];
    }
    acc += w * data[x];
  }
  return acc;
}

// sum_i 1/(x + inputs_i) == sum_j m_j/(x + table_j), each term inverted
// on its own. False when x collides with a negated entry.
template <class F>
bool rational_identity_holds(std::span<const F> inputs, std::span<const F> table, std::span<const F> m,
                             const F& x) {
  F lhs = F::zero(), rhs = F::zero();
  for (const F& s : inputs) {
    if ((x + s).is_zero()) return false;
    lhs += (x + s).inverse();
  }
  for (std::size_t j = 0; j < table.size(); ++j) {
    if ((x + table[j]).is_zero()) return false;
    rhs += m[j] * (x + table[j]).inverse();
  }
  return lhs == rhs;
}

// Row-major (rows x inner) times (inner x cols).
template <class T>
std::vector<T> matmul_naive(std::span<const T> a, std::span<const T> b, std::size_t rows, std::size_t inner,
                            std::size_t cols) {
  if (a.size() != rows * inner || b.size() != inner * cols) throw ShapeError("matmul_naive: shape mismatch");
  std::vector<T> c(rows * cols, T{});
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      for (std::size_t j = 0; j < cols; ++j) c[i * cols + j] = c[i * cols + j] + a[i * inner + k] * b[k * cols + j];
    }
  }
  return c;
}

inline std::vector<double> softmax(const std::vector<double>& x) {
  double mx = *std::max_element(x.begin(), x.end());
  std::vector<double> out(x.size());
  double sum = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += out[i] = std::exp(x[i] - mx);
  for (auto& v : out) v /= sum;
  return out;
}

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
inline double relu(double x) { return x > 0 ? x : 0; }
inline double gelu(double x) { return 0.5 * x * (1.0 + std::erf(x / std::sqrt(2.0))); }
inline double gelu_sigmoid(double x) { return x * sigmoid(1.702 * x); }
inline double swish(double x, double beta = 1.0) { return x * sigmoid(beta * x); }

inline std::vector<double> layernorm(const std::vector<double>& x, const std::vector<double>& gain,
                                     const std::vector<double>& bias, double eps = 0.0) {
  double mean = 0, var = 0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  for (double v : x) var += (v - mean) * (v - mean);
  var /= static_cast<double>(x.size());
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - mean) / std::sqrt(var + eps) * gain[i] + bias[i];
  return out;
}

}  // namespace zkt::oracle
