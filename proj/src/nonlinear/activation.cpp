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


#include "zkt/nonlinear/activation.hpp"

namespace zkt {

ZkAttnConfig sigmoid_config(std::int64_t gamma, std::int64_t theta, double multiplier, std::int64_t budget) {
  ZkAttnConfig c;
  c.gamma = gamma;
  c.theta = theta;
  c.head_dim = 1;
  c.row_len = 2;
  c.segments = 2;
  c.top_segments = 1;
  c.low_segments = 0;
  c.budgets = {budget, budget};
  c.input_multiplier = multiplier;
  return c;
}

std::vector<std::int64_t> sigmoid_logits(const std::vector<std::int64_t>& z) {
  std::vector<std::int64_t> out(2 * z.size(), 0);
  for (std::size_t i = 0; i < z.size(); ++i) out[2 * i] = z[i];
  return out;
}

AttnWitness sigmoid_compute(const std::vector<std::int64_t>& z, const ZkAttnParams& p) {
  return softmax_compute(sigmoid_logits(z), z.size(), 2, p);
}

std::vector<std::int64_t> sigmoid_values(const AttnWitness& w) {
  std::vector<std::int64_t> out(w.rows);
  for (std::size_t i = 0; i < w.rows; ++i) out[i] = w.output[2 * i];
  return out;
}

GatedConfig gelu_config(std::int64_t gamma, std::int64_t theta, std::int64_t budget, std::int64_t output_range) {
  return GatedConfig{derive_params(sigmoid_config(gamma, theta, 1.702, budget)),
                     RescaleConfig{theta, output_range, budget}};
}

GatedConfig swiglu_config(std::int64_t gamma, std::int64_t theta, double beta, std::int64_t budget,
                          std::int64_t output_range) {
  return GatedConfig{derive_params(sigmoid_config(gamma, theta, beta, budget)),
                     RescaleConfig{gamma * theta, output_range, budget}};
}

GatedWitness gated_compute(const std::vector<std::int64_t>& z, const std::vector<std::int64_t>* extra,
                           const GatedConfig& c) {
  if (extra && extra->size() != z.size()) throw ShapeError("gate operands differ in size");
  GatedWitness w;
  w.sigmoid = sigmoid_compute(z, c.sigmoid);
  auto ys = sigmoid_values(w.sigmoid);
  std::vector<std::int64_t> prod(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    __int128 v = static_cast<__int128>(z[i]) * ys[i];
    if (extra) v *= (*extra)[i];
    if (v > INT64_MAX || v < INT64_MIN) throw RangeError("gated product overflows");
    prod[i] = static_cast<std::int64_t>(v);
  }
  w.rescale = rescale_compute(prod, c.rescale);
  return w;
}

}  // namespace zkt
