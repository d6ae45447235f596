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
#include <string>
#include <vector>

namespace zkt {

// Inputs to parameter selection. Segment k = 0 is least significant.
// budgets[k] caps the radix of segment k (its table size).
struct ZkAttnConfig {
  std::int64_t gamma = 1 << 16;
  std::int64_t theta = 1 << 16;
  unsigned head_dim = 64;
  unsigned row_len = 64;
  unsigned segments = 5;
  unsigned top_segments = 1;
  unsigned low_segments = 3;
  std::vector<std::int64_t> budgets;
  // Scales the exponent: rows compute exp(multiplier * z / (gamma sqrt(d))).
  double input_multiplier = 1.0;
};

// K = 5 segments with 2^16 budgets, three low and one top segment.
ZkAttnConfig k5l3_config(unsigned head_dim, unsigned row_len);

struct ZkAttnParams {
  ZkAttnConfig config;
  std::vector<std::int64_t> radices;     // b^(k)
  std::vector<std::int64_t> cumulative;  // B^(k), product of lower radices
  std::vector<double> segment_scale;     // theta^(k); 1 outside the middle
  double shift_target = 0;               // optimal B_{K-M} before rounding up
  double eps_attn = 0;
  std::int64_t tolerance = 0;            // E

  unsigned segments() const { return config.segments; }
  unsigned first_middle() const { return config.low_segments; }
  unsigned first_top() const { return config.segments - config.top_segments; }
  bool is_middle(unsigned k) const { return k >= first_middle() && k < first_top(); }
  bool is_top(unsigned k) const { return k >= first_top(); }

  // gamma sqrt(d) / multiplier: exp argument divisor.
  double exp_scale() const;
  // B, the exclusive magnitude bound of shifted inputs.
  std::int64_t input_bound() const;
  std::int64_t low_bound() const { return cumulative[first_middle()]; }   // B_L
  std::int64_t top_bound() const { return cumulative[first_top()]; }      // B_{K-M}

  // Worst-case relative rounding error of the middle tables for the given
  // per-segment scales.
  double table_rounding_bound(const std::vector<double>& scales) const;
  double table_rounding_bound() const { return table_rounding_bound(segment_scale); }

  // Output table entry of segment k at digit x.
  std::int64_t segment_output(unsigned k, std::int64_t x) const;

  std::string describe() const;
};

// Throws ParamError when the configuration cannot meet the target.
ZkAttnParams derive_params(const ZkAttnConfig& config);

// The per-row L1 error bound for the realized bounds and scales.
double attention_error_bound(const ZkAttnParams& p);

}  // namespace zkt
