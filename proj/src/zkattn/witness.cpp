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


#include "zkt/zkattn/witness.hpp"

#include <algorithm>
#include <cmath>

#include "zkt/common/errors.hpp"
#include "zkt/common/parallel.hpp"

namespace zkt {

std::vector<std::int64_t> segment_table(const ZkAttnParams& p, unsigned k) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(p.radices[k]));
  for (std::int64_t x = 0; x < p.radices[k]; ++x) out[x] = p.segment_output(k, x);
  return out;
}

std::int64_t softmax_shift(const std::int64_t* row, std::size_t cols, const ZkAttnParams& p) {
  const double s = p.exp_scale();
  std::int64_t mx = *std::max_element(row, row + cols);
  double acc = 0;
  for (std::size_t j = 0; j < cols; ++j) acc += std::exp(static_cast<double>(row[j] - mx) / s);
  double shift = static_cast<double>(mx) + s * std::log(acc);
  return static_cast<std::int64_t>(std::nearbyint(shift));
}

std::vector<std::int64_t> to_digits(std::int64_t x, const std::vector<std::int64_t>& radices) {
  std::vector<std::int64_t> out(radices.size());
  for (std::size_t k = 0; k < radices.size(); ++k) {
    out[k] = x % radices[k];
    x /= radices[k];
  }
  if (x != 0) throw RangeError("value exceeds the mixed-radix range");
  return out;
}

std::int64_t from_digits(const std::vector<std::int64_t>& digits, const std::vector<std::int64_t>& radices) {
  std::int64_t acc = 0;
  for (std::size_t k = radices.size(); k-- > 0;) acc = acc * radices[k] + digits[k];
  return acc;
}

AttnWitness softmax_with_shift(const std::vector<std::int64_t>& logits, std::size_t rows, std::size_t cols,
                               std::vector<std::int64_t> shift, const ZkAttnParams& p) {
  if (logits.size() != rows * cols || shift.size() != rows) throw ShapeError("softmax witness: shape mismatch");
  const unsigned K = p.segments(), L = p.first_middle();
  const std::size_t n = rows * cols;
  AttnWitness w;
  w.rows = rows;
  w.cols = cols;
  w.logits = logits;
  w.shift = std::move(shift);
  w.digits.assign(K, std::vector<std::int64_t>(n));
  w.segments.assign(K - L, std::vector<std::int64_t>(n));
  w.output.assign(n, 0);
  w.row_sums.assign(rows, 0);
  std::vector<std::vector<std::int64_t>> tables;
  for (unsigned k = L; k < K; ++k) tables.push_back(segment_table(p, k));
  const std::int64_t bound = p.input_bound();

  parallel_for(rows, [&](std::size_t r) {
    std::int64_t sum = 0;
    for (std::size_t c = 0; c < cols; ++c) {
      std::size_t i = r * cols + c;
      std::int64_t shifted = logits[i] - w.shift[r];
      if (shifted > 0 || shifted <= -bound) {
        throw RangeError("shifted logit " + std::to_string(shifted) + " outside (-" + std::to_string(bound) + ", 0]");
      }
      std::int64_t rest = -shifted;
      std::int64_t y = 1;
      for (unsigned k = 0; k < K; ++k) {
        std::int64_t digit = rest % p.radices[k];
        rest /= p.radices[k];
        w.digits[k][i] = digit;
        if (k >= L) {
          std::int64_t seg = tables[k - L][digit];
          w.segments[k - L][i] = seg;
          y *= seg;
        }
      }
      w.output[i] = y;
      sum += y;
    }
    w.row_sums[r] = sum;
  });
  return w;
}

AttnWitness softmax_compute(const std::vector<std::int64_t>& logits, std::size_t rows, std::size_t cols,
                            const ZkAttnParams& p) {
  if (logits.size() != rows * cols) throw ShapeError("softmax witness: shape mismatch");
  if (cols > p.config.row_len) throw ParamError("row longer than the configured row length");
  std::vector<std::int64_t> shift(rows);
  for (std::size_t r = 0; r < rows; ++r) shift[r] = softmax_shift(&logits[r * cols], cols, p);
  return softmax_with_shift(logits, rows, cols, std::move(shift), p);
}

}  // namespace zkt
