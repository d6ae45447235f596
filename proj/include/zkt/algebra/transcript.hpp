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
#include <span>
#include <string_view>
#include <vector>

#include "zkt/algebra/hash.hpp"

namespace zkt {

// Fiat-Shamir transcript over a SHA-256 hash chain. Every absorb and every
// squeeze is framed with its label and length; squeezes also bump a counter
// and are fed back, so repeated labels never repeat a challenge.
//
// The interactive variant ignores the chain when producing challenges and
// draws them from a seeded stream instead, standing in for an honest
// verifier's coins in tests.
class Transcript {
 public:
  explicit Transcript(std::string_view domain);
  static Transcript interactive(std::uint64_t seed);

  void absorb_bytes(std::string_view label, std::span<const std::uint8_t> data);
  void absorb_u64(std::string_view label, std::uint64_t v);

  template <class F>
  void absorb_scalar(std::string_view label, const F& x) {
    auto b = x.to_bytes();
    absorb_bytes(label, b);
  }
  template <class F>
  void absorb_scalars(std::string_view label, std::span<const F> xs) {
    std::vector<std::uint8_t> buf;
    buf.reserve(xs.size() * F::kByteWidth);
    for (const auto& x : xs) {
      auto b = x.to_bytes();
      buf.insert(buf.end(), b.begin(), b.end());
    }
    absorb_bytes(label, buf);
  }
  template <class P>
  void absorb_point(std::string_view label, const P& p) {
    auto b = p.to_bytes();
    absorb_bytes(label, b);
  }
  template <class P>
  void absorb_points(std::string_view label, std::span<const P> ps) {
    std::vector<std::uint8_t> buf;
    buf.reserve(ps.size() * P::kEncodedSize);
    for (const auto& p : ps) {
      auto b = p.to_bytes();
      buf.insert(buf.end(), b.begin(), b.end());
    }
    absorb_bytes(label, buf);
  }

  template <class F>
  F challenge(std::string_view label) {
    std::uint8_t wide[64];
    squeeze(label, wide);
    return F::from_bytes_wide(wide);
  }
  template <class F>
  std::vector<F> challenges(std::string_view label, std::size_t n) {
    std::vector<F> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(challenge<F>(label));
    return out;
  }

  const Digest& state() const { return state_; }

 private:
  void squeeze(std::string_view label, std::uint8_t out[64]);

  Digest state_{};
  std::uint64_t counter_ = 0;
  std::optional<Digest> coins_;
};

}  // namespace zkt
