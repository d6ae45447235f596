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
#include <filesystem>
#include <string>
#include <vector>

#include "zkt/model/config.hpp"

namespace zkt {

// Row-major integer matrix at a fixed-point scale.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  std::int64_t& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  std::int64_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  bool operator==(const IntMatrix&) const = default;
};

struct LayerWeights {
  IntMatrix ln1_gain, ln1_bias;  // 1 x d_model
  IntMatrix wq, wk, wv, wo;      // d_model x d_model
  IntMatrix ln2_gain, ln2_bias;
  IntMatrix w_up;    // d_model x d_ff
  IntMatrix w_gate;  // d_model x d_ff, SwiGLU only
  IntMatrix w_down;  // d_ff x d_model
};

struct WeightSet {
  ModelConfig config;
  IntMatrix embedding;  // vocab x d_model
  IntMatrix position;   // max_seq x d_model
  std::vector<LayerWeights> layers;
  IntMatrix final_gain, final_bias;
  IntMatrix head;  // d_model x vocab

  // Every tensor in file and commitment order.
  std::vector<std::pair<std::string, const IntMatrix*>> tensors() const;
  std::vector<std::pair<std::string, IntMatrix*>> tensors();

  static WeightSet zeros(const ModelConfig& c);
  // Gaussian init scaled by 1/sqrt(fan_in); gains near one.
  static WeightSet random(const ModelConfig& c, std::uint64_t seed);

  // JSON config on the first line, then each tensor as little-endian int64.
  void save(const std::filesystem::path& path) const;
  // Throws std::ios_base::failure when unreadable, DecodeError when malformed.
  static WeightSet load(const std::filesystem::path& path);
};

}  // namespace zkt
