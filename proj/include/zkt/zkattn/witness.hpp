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

#include <cstdint>
#include <vector>

#include "zkt/zkattn/params.hpp"

namespace zkt {

// Integer witness of the segmented softmax over a rows x cols matrix of
// gamma-scaled logits, row-major.
struct AttnWitness {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> logits;                 // Z
  std::vector<std::int64_t> shift;                  // rounded z-hat, one per row
  std::vector<std::vector<std::int64_t>> digits;    // K tensors
  std::vector<std::vector<std::int64_t>> segments;  // outputs of segments L..K-1
  std::vector<std::int64_t> output;                 // Y, scale theta
  std::vector<std::int64_t> row_sums;               // y-hat
};

// Output column of segment k for x in [0, b^(k)).
std::vector<std::int64_t> segment_table(const ZkAttnParams& p, unsigned k);

// gamma sqrt(d) ln sum_j exp(z_j / (gamma sqrt(d))), rounded half to even.
std::int64_t softmax_shift(const std::int64_t* row, std::size_t cols, const ZkAttnParams& p);

// Full witness; throws RangeError when a shifted logit falls outside (-B, 0].
AttnWitness softmax_compute(const std::vector<std::int64_t>& logits, std::size_t rows, std::size_t cols,
                            const ZkAttnParams& p);

// Witness for caller-chosen shifts (used to build dishonest witnesses).
AttnWitness softmax_with_shift(const std::vector<std::int64_t>& logits, std::size_t rows, std::size_t cols,
                               std::vector<std::int64_t> shift, const ZkAttnParams& p);

// Least-significant-first digits of x in the mixed radix.
std::vector<std::int64_t> to_digits(std::int64_t x, const std::vector<std::int64_t>& radices);
std::int64_t from_digits(const std::vector<std::int64_t>& digits, const std::vector<std::int64_t>& radices);

}  // namespace zkt
