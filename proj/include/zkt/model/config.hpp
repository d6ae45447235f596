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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zkt/nonlinear/activation.hpp"
#include "zkt/nonlinear/layernorm.hpp"
#include "zkt/nonlinear/rescale.hpp"
#include "zkt/zkattn/params.hpp"

namespace zkt {

enum class Activation { relu, gelu, swiglu };

std::string to_string(Activation a);
Activation parse_activation(const std::string& s);

// Pre-LN decoder stack: embedding + learned positions, then per layer
// x += Attn(LN1(x)); x += MLP(LN2(x)), then a final LayerNorm and the
// vocabulary head. Attention is bidirectional over the prompt.
struct ModelConfig {
  unsigned layers = 2;
  unsigned d_model = 64;
  unsigned heads = 4;
  unsigned d_ff = 128;
  unsigned vocab = 64;
  unsigned max_seq = 32;
  unsigned gamma_log2 = 8;
  unsigned theta_log2 = 16;
  Activation activation = Activation::relu;
  double swiglu_beta = 1.0;

  // Quotient tables of every gamma-scale activation: [-2^(b-1), 2^(b-1)).
  unsigned activation_range_log2 = 13;
  // Attention logits q.k are not yet divided by sqrt(d_head).
  unsigned score_range_log2 = 15;
  unsigned digit_budget_log2 = 8;

  unsigned ln_table_log2 = 14;
  double ln_max_variance = 16.0;
  double ln_eps = 1e-5;

  // Softmax segments; low segments first, budgets per segment.
  unsigned attn_segments = 2;
  unsigned attn_low_segments = 0;
  unsigned attn_top_segments = 1;
  std::vector<std::int64_t> attn_budgets{1 << 13, 1 << 4};
  unsigned sigmoid_budget_log2 = 12;

  unsigned d_head() const { return d_model / heads; }
  std::int64_t gamma() const { return std::int64_t{1} << gamma_log2; }
  std::int64_t theta() const { return std::int64_t{1} << theta_log2; }

  // Throws ParamError.
  void validate() const;

  nlohmann::json to_json() const;
  static ModelConfig from_json(const nlohmann::json& j);
};

// Per-operation parameters for a prompt of `seq` tokens.
struct ModelOps {
  std::size_t seq = 0;
  RescaleConfig linear;
  RescaleConfig scores;
  RescaleConfig context;
  ZkAttnParams attn;
  LayerNormConfig layernorm;
  std::optional<GatedConfig> gated;
};

ModelOps derive_ops(const ModelConfig& c, std::size_t seq);

}  // namespace zkt
