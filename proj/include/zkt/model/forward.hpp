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

#include "zkt/model/weights.hpp"
#include "zkt/nonlinear/relu.hpp"
#include "zkt/zkattn/witness.hpp"

namespace zkt {

// Every intermediate of one layer. Matrices are row-major; attention
// tensors are laid out (head, query, key).
struct LayerTrace {
  std::vector<std::int64_t> input;
  LayerNormWitness ln1;
  RescaleWitness q, k, v;
  RescaleWitness scores;
  AttnWitness attn;
  RescaleWitness context;
  RescaleWitness proj;
  std::vector<std::int64_t> mid;
  LayerNormWitness ln2;
  RescaleWitness up;    // GELU and SwiGLU
  RescaleWitness gate;  // SwiGLU
  ReluWitness relu;     // ReLU: fused with the up projection
  GatedWitness act;     // GELU and SwiGLU
  RescaleWitness down;
  std::vector<std::int64_t> output;

  const std::vector<std::int64_t>& hidden(Activation a) const {
    return a == Activation::relu ? relu.output : act.rescale.quotient;
  }
};

struct Trace {
  std::vector<std::uint32_t> tokens;
  ModelOps ops;
  std::vector<std::int64_t> embedded;
  std::vector<LayerTrace> layers;
  LayerNormWitness final_ln;
  RescaleWitness head;

  std::size_t seq() const { return tokens.size(); }
  // gamma-scale logits, seq x vocab.
  const std::vector<std::int64_t>& logits() const { return head.quotient; }
};

// Deterministic quantized forward pass. Throws RangeError when a value
// leaves its lookup table and ShapeError on a bad prompt.
Trace forward(const WeightSet& w, const std::vector<std::uint32_t>& tokens);

// Argmax token per position.
std::vector<std::uint32_t> greedy_tokens(const std::vector<std::int64_t>& logits, std::size_t vocab);

// Double-precision forward pass over the dequantized weights using the
// exact functions the quantized pass approximates.
std::vector<double> reference_forward(const WeightSet& w, const std::vector<std::uint32_t>& tokens);

}  // namespace zkt
