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

#include "zkt/algebra/schnorr_group.hpp"

#include "zkt/algebra/hash.hpp"

namespace zkt {

SchnorrPoint SchnorrPoint::hash_to_curve(std::span<const std::uint8_t> msg) {
  for (std::uint64_t ctr = 0;; ++ctr) {
    Digest d = Sha256().update("zkt.schnorr67.h2c").update(msg).update_u64(ctr).finish();
    Base h = Base::from_bytes_wide(d);
    if (h.is_zero()) continue;
    SchnorrPoint p(h.pow(kCofactor));
    if (!p.is_identity()) return p;
  }
}

SchnorrPoint SchnorrPoint::from_bytes(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kEncodedSize) throw DecodeError("point encoding width");
  Base v = Base::from_bytes(bytes);
  if (v.is_zero()) throw DecodeError("zero is not a group element");
  // Subgroup membership: v^q == 1.
  if (!v.pow(M61::kModulus).is_one()) throw DecodeError("element outside the subgroup");
  return SchnorrPoint(v);
}

}  // namespace zkt
