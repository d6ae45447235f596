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

#include <array>
#include <cstdint>
#include <span>

#include "zkt/algebra/fields.hpp"

namespace zkt {

// Order 2^61-1 subgroup of (Z/P)^* with P = 52 (2^61-1) + 1. Far too small
// for real use; it exists so exhaustive checks over the 61-bit field run
// the full commitment stack quickly. Written additively to share code with
// elliptic-curve groups.
class SchnorrPoint {
 public:
  using Base = Toy67;
  static constexpr std::size_t kEncodedSize = Base::kByteWidth;
  static constexpr std::uint64_t kCofactor = 52;
  using Encoding = std::array<std::uint8_t, kEncodedSize>;

  SchnorrPoint() : v_(Base::one()) {}

  static SchnorrPoint identity() { return SchnorrPoint(); }
  static SchnorrPoint hash_to_curve(std::span<const std::uint8_t> msg);

  bool is_identity() const { return v_.is_one(); }
  bool is_normalized() const { return true; }

  SchnorrPoint dbl() const { return SchnorrPoint(v_.square()); }
  SchnorrPoint operator+(const SchnorrPoint& o) const { return SchnorrPoint(v_ * o.v_); }
  SchnorrPoint add_mixed(const SchnorrPoint& o) const { return *this + o; }
  SchnorrPoint operator-() const { return SchnorrPoint(v_.inverse()); }
  SchnorrPoint operator-(const SchnorrPoint& o) const { return *this + (-o); }
  SchnorrPoint& operator+=(const SchnorrPoint& o) { return *this = *this + o; }

  bool operator==(const SchnorrPoint& o) const { return v_ == o.v_; }
  bool operator!=(const SchnorrPoint& o) const { return v_ != o.v_; }

  SchnorrPoint normalized() const { return *this; }
  static void batch_normalize(std::span<SchnorrPoint>) {}

  Encoding to_bytes() const { return v_.to_bytes(); }
  static SchnorrPoint from_bytes(std::span<const std::uint8_t> bytes);

  const Base& value() const { return v_; }

 private:
  explicit SchnorrPoint(const Base& v) : v_(v) {}
  Base v_;
};

}  // namespace zkt
