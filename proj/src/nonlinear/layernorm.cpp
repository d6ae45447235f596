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


#include "zkt/nonlinear/layernorm.hpp"

#include <cmath>

namespace zkt {

RescaleConfig LayerNormConfig::variance_rescale() const {
  return RescaleConfig{std::int64_t{1} << variance_shift, 2 * variance_range, digit_budget};
}

RescaleConfig LayerNormConfig::output_rescale() const {
  return RescaleConfig{static_cast<std::int64_t>(row_len) * gamma * gamma, output_range, digit_budget};
}

double LayerNormConfig::variance_of(std::int64_t v) const {
  const double n = row_len, g = static_cast<double>(gamma);
  return std::ldexp(static_cast<double>(v), static_cast<int>(variance_shift)) / (n * n * n * g * g);
}

std::int64_t LayerNormConfig::inverse_std(std::int64_t v) const {
  return std::llround(static_cast<double>(gamma) / std::sqrt(variance_of(v) + eps));
}

LayerNormConfig layernorm_config(std::int64_t gamma, unsigned row_len, unsigned table_bits, double max_variance,
                                 std::int64_t output_range, double eps) {
  LayerNormConfig c;
  c.gamma = gamma;
  c.row_len = row_len;
  c.eps = eps;
  c.variance_range = std::int64_t{1} << table_bits;
  c.output_range = output_range;
  const double n = row_len, g = static_cast<double>(gamma);
  const double top = n * n * n * g * g * max_variance;
  int shift = static_cast<int>(std::ceil(std::log2(top))) - static_cast<int>(table_bits) + 1;
  c.variance_shift = static_cast<unsigned>(std::max(shift, 1));
  return c;
}

LayerNormWitness layernorm_compute(const std::vector<std::int64_t>& x, std::size_t rows,
                                   const std::vector<std::int64_t>& gain, const std::vector<std::int64_t>& bias,
                                   const LayerNormConfig& c) {
  const std::size_t cols = c.row_len;
  if (x.size() != rows * cols || gain.size() != cols || bias.size() != cols) {
    throw ShapeError("layernorm operand shapes do not match");
  }
  if (!is_pow2(rows) || !is_pow2(cols)) throw ShapeError("layernorm rows and columns must be powers of two");
  const std::int64_t n = static_cast<std::int64_t>(cols);
  LayerNormWitness w;
  w.rows = rows;
  w.cols = cols;
  w.row_sums.assign(rows, 0);
  w.square_sums.assign(rows, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) w.row_sums[i] += x[i * cols + j];
    for (std::size_t j = 0; j < cols; ++j) {
      __int128 d = static_cast<__int128>(n) * x[i * cols + j] - w.row_sums[i];
      __int128 acc = w.square_sums[i] + d * d;
      if (acc > INT64_MAX) throw RangeError("layernorm square sum overflows");
      w.square_sums[i] = static_cast<std::int64_t>(acc);
    }
  }
  w.variance = rescale_compute(w.square_sums, c.variance_rescale());
  w.inverse_std.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    if (w.variance.quotient[i] >= c.variance_range) throw RangeError("variance outside the lookup table");
    w.inverse_std[i] = c.inverse_std(w.variance.quotient[i]);
  }
  const __int128 scale = static_cast<__int128>(n) * c.gamma * c.gamma;
  std::vector<std::int64_t> prod(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      __int128 d = static_cast<__int128>(n) * x[i * cols + j] - w.row_sums[i];
      __int128 v = d * w.inverse_std[i] * gain[j] + scale * bias[j];
      if (v > INT64_MAX || v < INT64_MIN) throw RangeError("layernorm product overflows");
      prod[i * cols + j] = static_cast<std::int64_t>(v);
    }
  }
  w.output = rescale_compute(prod, c.output_rescale());
  return w;
}

}  // namespace zkt
