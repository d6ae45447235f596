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
#include <span>

#include "zkt/algebra/hash.hpp"

namespace zkt {

// Prover-side randomness (blinders, masking scalars). Seeded instances are
// a ChaCha20 stream so runs are reproducible; unseeded ones read the OS.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  explicit Rng(const Digest& key);
  static Rng from_os();

  void fill(std::span<std::uint8_t> out);
  std::uint64_t next_u64();
  // Uniform in [0, bound).
  std::uint64_t uniform(std::uint64_t bound);
  double uniform_real();  // [0, 1)
  double normal();

  template <class F>
  F field() {
    std::uint8_t wide[64];
    fill(wide);
    return F::from_bytes_wide(wide);
  }

 private:
  Rng() = default;
  bool os_ = false;
  Digest key_{};
  std::uint64_t counter_ = 0;
  std::uint8_t buffer_[256];
  std::size_t available_ = 0;
};

}  // namespace zkt
