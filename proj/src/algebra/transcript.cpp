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

#include "zkt/algebra/transcript.hpp"

#include <cstring>

namespace zkt {

Transcript::Transcript(std::string_view domain) {
  state_ = Sha256().update("zkt.transcript.v1").update_u64(domain.size()).update(domain).finish();
}

Transcript Transcript::interactive(std::uint64_t seed) {
  Transcript t("interactive");
  t.coins_ = Sha256().update("zkt.transcript.coins").update_u64(seed).finish();
  return t;
}

void Transcript::absorb_bytes(std::string_view label, std::span<const std::uint8_t> data) {
  state_ = Sha256()
               .update(state_)
               .update("A")
               .update_u64(label.size())
               .update(label)
               .update_u64(data.size())
               .update(data)
               .finish();
}

void Transcript::absorb_u64(std::string_view label, std::uint64_t v) {
  std::uint8_t b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
  absorb_bytes(label, b);
}

void Transcript::squeeze(std::string_view label, std::uint8_t out[64]) {
  const Digest& key = coins_ ? *coins_ : state_;
  for (std::uint64_t half = 0; half < 2; ++half) {
    Digest d = Sha256()
                   .update(key)
                   .update("C")
                   .update_u64(label.size())
                   .update(label)
                   .update_u64(counter_)
                   .update_u64(half)
                   .finish();
    std::memcpy(out + 32 * half, d.data(), 32);
  }
  ++counter_;
  state_ = Sha256().update(state_).update("R").update(std::span<const std::uint8_t>(out, 64)).finish();
}

}  // namespace zkt
