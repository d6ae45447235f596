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

#include "zkt/algebra/rng.hpp"

#include <sodium.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>

namespace zkt {

namespace {
void ensure_sodium() {
  static const bool ok = sodium_init() >= 0;
  if (!ok) throw std::runtime_error("libsodium initialisation failed");
}
}  // namespace

Rng::Rng(std::uint64_t seed) {
  key_ = Sha256().update("zkt.rng.seed").update_u64(seed).finish();
}

Rng::Rng(const Digest& key) : key_(key) {}

Rng Rng::from_os() {
  ensure_sodium();
  Rng r;
  r.os_ = true;
  return r;
}

void Rng::fill(std::span<std::uint8_t> out) {
  std::size_t pos = 0;
  while (pos < out.size()) {
    if (available_ == 0) {
      if (os_) {
        randombytes_buf(buffer_, sizeof(buffer_));
      } else {
        Digest block_seed = Sha256().update(key_).update_u64(counter_++).finish();
        randombytes_buf_deterministic(buffer_, sizeof(buffer_), block_seed.data());
      }
      available_ = sizeof(buffer_);
    }
    std::size_t take = std::min(available_, out.size() - pos);
    std::memcpy(out.data() + pos, buffer_ + sizeof(buffer_) - available_, take);
    available_ -= take;
    pos += take;
  }
}

std::uint64_t Rng::next_u64() {
  std::uint8_t b[8];
  fill(b);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

std::uint64_t Rng::uniform(std::uint64_t bound) {
  if (bound <= 1) return 0;
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

double Rng::uniform_real() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  double u1 = uniform_real();
  double u2 = uniform_real();
  if (u1 < 1e-300) u1 = 1e-300;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace zkt
