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


#include "zkt/model/config.hpp"

#include "zkt/common/bits.hpp"

namespace zkt {

std::string to_string(Activation a) {
  switch (a) {
    case Activation::relu:
      return "relu";
    case Activation::gelu:
      return "gelu";
    case Activation::swiglu:
      return "swiglu";
  }
  return "?";
}

Activation parse_activation(const std::string& s) {
  if (s == "relu") return Activation::relu;
  if (s == "gelu") return Activation::gelu;
  if (s == "swiglu") return Activation::swiglu;
  throw ParamError("unknown activation '" + s + "'");
}

void ModelConfig::validate() const {
  auto pow2 = [](unsigned v, const char* name) {
    if (!is_pow2(v)) throw ParamError(std::string(name) + " must be a power of two");
  };
  if (layers == 0) throw ParamError("layers must be positive");
  if (heads == 0 || d_model % heads != 0) throw ParamError("d_model must be a multiple of heads");
  pow2(d_model, "d_model");
  pow2(heads, "heads");
  pow2(d_ff, "d_ff");
  pow2(vocab, "vocab");
  pow2(max_seq, "max_seq");
  if (gamma_log2 < 2 || gamma_log2 > 16 || theta_log2 < 4 || theta_log2 > 24) {
    throw ParamError("scale exponents out of range");
  }
  if (activation_range_log2 < 4 || activation_range_log2 > 20 || score_range_log2 < 4 || score_range_log2 > 20) {
    throw ParamError("activation range out of range");
  }
  if (digit_budget_log2 < 1 || digit_budget_log2 > 16) throw ParamError("digit budget out of range");
  if (ln_table_log2 < 4 || ln_table_log2 > 20) throw ParamError("LayerNorm table size out of range");
  if (!(ln_max_variance > 0) || !(ln_eps > 0)) throw ParamError("LayerNorm variance and eps must be positive");
  if (attn_budgets.size() != attn_segments) throw ParamError("one attention budget per segment");
  if (attn_low_segments + attn_top_segments >= attn_segments) throw ParamError("attention needs a middle segment");
}

nlohmann::json ModelConfig::to_json() const {
  return nlohmann::json{{"layers", layers},
                        {"d_model", d_model},
                        {"heads", heads},
                        {"d_ff", d_ff},
                        {"vocab", vocab},
                        {"max_seq", max_seq},
                        {"gamma_log2", gamma_log2},
                        {"theta_log2", theta_log2},
                        {"activation", to_string(activation)},
                        {"swiglu_beta", swiglu_beta},
                        {"activation_range_log2", activation_range_log2},
                        {"score_range_log2", score_range_log2},
                        {"digit_budget_log2", digit_budget_log2},
                        {"layernorm",
                         {{"table_log2", ln_table_log2}, {"max_variance", ln_max_variance}, {"eps", ln_eps}}},
                        {"attention",
                         {{"segments", attn_segments},
                          {"low_segments", attn_low_segments},
                          {"top_segments", attn_top_segments},
                          {"budgets", attn_budgets}}},
                        {"sigmoid_budget_log2", sigmoid_budget_log2}};
}

ModelConfig ModelConfig::from_json(const nlohmann::json& j) {
  ModelConfig c;
  try {
    auto get = [&](const nlohmann::json& obj, const char* key, auto& field) {
      if (obj.contains(key)) obj.at(key).get_to(field);
    };
    get(j, "layers", c.layers);
    get(j, "d_model", c.d_model);
    get(j, "heads", c.heads);
    get(j, "d_ff", c.d_ff);
    get(j, "vocab", c.vocab);
    get(j, "max_seq", c.max_seq);
    get(j, "gamma_log2", c.gamma_log2);
    get(j, "theta_log2", c.theta_log2);
    if (j.contains("activation")) c.activation = parse_activation(j.at("activation").get<std::string>());
    get(j, "swiglu_beta", c.swiglu_beta);
    get(j, "activation_range_log2", c.activation_range_log2);
    get(j, "score_range_log2", c.score_range_log2);
    get(j, "digit_budget_log2", c.digit_budget_log2);
    if (j.contains("layernorm")) {
      const auto& ln = j.at("layernorm");
      get(ln, "table_log2", c.ln_table_log2);
      get(ln, "max_variance", c.ln_max_variance);
      get(ln, "eps", c.ln_eps);
    }
    if (j.contains("attention")) {
      const auto& a = j.at("attention");
      get(a, "segments", c.attn_segments);
      get(a, "low_segments", c.attn_low_segments);
      get(a, "top_segments", c.attn_top_segments);
      get(a, "budgets", c.attn_budgets);
    }
    get(j, "sigmoid_budget_log2", c.sigmoid_budget_log2);
  } catch (const nlohmann::json::exception& e) {
    throw ParamError(std::string("bad model config: ") + e.what());
  }
  c.validate();
  return c;
}

ModelOps derive_ops(const ModelConfig& c, std::size_t seq) {
  c.validate();
  if (seq == 0 || seq > c.max_seq || !is_pow2(seq)) {
    throw ShapeError("prompt length must be a power of two no larger than max_seq");
  }
  ModelOps ops;
  ops.seq = seq;
  const std::int64_t range = std::int64_t{1} << c.activation_range_log2;
  const std::int64_t budget = std::int64_t{1} << c.digit_budget_log2;
  ops.linear = RescaleConfig{c.gamma(), range, budget};
  ops.scores = RescaleConfig{c.gamma(), std::int64_t{1} << c.score_range_log2, budget};
  ops.context = RescaleConfig{c.theta(), range, budget};

  ZkAttnConfig ac;
  ac.gamma = c.gamma();
  ac.theta = c.theta();
  ac.head_dim = c.d_head();
  ac.row_len = static_cast<unsigned>(seq);
  ac.segments = c.attn_segments;
  ac.low_segments = c.attn_low_segments;
  ac.top_segments = c.attn_top_segments;
  ac.budgets = c.attn_budgets;
  ops.attn = derive_params(ac);

  ops.layernorm = layernorm_config(c.gamma(), c.d_model, c.ln_table_log2, c.ln_max_variance, range, c.ln_eps);
  ops.layernorm.digit_budget = budget;
  const std::int64_t sig_budget = std::int64_t{1} << c.sigmoid_budget_log2;
  if (c.activation == Activation::gelu) ops.gated = gelu_config(c.gamma(), c.theta(), sig_budget, range);
  if (c.activation == Activation::swiglu) {
    ops.gated = swiglu_config(c.gamma(), c.theta(), c.swiglu_beta, sig_budget, range);
  }
  if (ops.gated) ops.gated->rescale.digit_budget = budget;
  return ops;
}

}  // namespace zkt
