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


#include "zkt/model/prover.hpp"

#include <algorithm>

namespace zkt {

WeightIndex::WeightIndex(const ModelConfig& c) {
  std::size_t next = 2;
  for (unsigned l = 0; l < c.layers; ++l) {
    Layer L{};
    L.ln1_gain = next++;
    L.ln1_bias = next++;
    L.wq = next++;
    L.wk = next++;
    L.wv = next++;
    L.wo = next++;
    L.ln2_gain = next++;
    L.ln2_bias = next++;
    L.w_up = next++;
    L.w_gate = c.activation == Activation::swiglu ? next++ : 0;
    L.w_down = next++;
    layers.push_back(L);
  }
  final_gain = next++;
  final_bias = next++;
  head = next++;
  count = next;
}

unsigned required_log_dim(const ModelConfig& c) {
  auto lg = [](std::size_t n) { return log2_exact(next_pow2(std::max<std::size_t>(n, 1))); };
  const std::size_t seq = c.max_seq, d = c.d_model;
  std::vector<std::size_t> sizes{c.vocab * d,
                                 seq * d,
                                 d * c.d_ff,
                                 d * c.vocab,
                                 c.heads * seq * seq,
                                 seq * c.d_ff * 2,
                                 std::size_t{1} << c.activation_range_log2,
                                 std::size_t{1} << c.score_range_log2,
                                 std::size_t{1} << c.ln_table_log2,
                                 std::size_t{1} << c.sigmoid_budget_log2};
  for (auto b : c.attn_budgets) sizes.push_back(static_cast<std::size_t>(b));
  unsigned best = 0;
  for (auto s : sizes) best = std::max(best, lg(s));
  return best;
}

}  // namespace zkt
