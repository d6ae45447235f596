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

#include <string_view>

#include "zkt/algebra/fields.hpp"
#include "zkt/algebra/schnorr_group.hpp"
#include "zkt/algebra/secp256k1.hpp"

namespace zkt {

// A prime-order group together with its scalar field (field order equals
// group order). Everything above the algebra layer is templated on one.
template <class G>
concept GroupBackend = requires {
  typename G::Scalar;
  typename G::Point;
  { G::kName } -> std::convertible_to<std::string_view>;
};

struct Secp256k1Backend {
  using Scalar = Secp256k1Scalar;
  using Point = Secp256k1Point;
  static constexpr std::string_view kName = "secp256k1";
};

// 61-bit test backend for exhaustive small-field checks.
struct ToyBackend {
  using Scalar = M61;
  using Point = SchnorrPoint;
  static constexpr std::string_view kName = "toy61";
};

using DefaultBackend = Secp256k1Backend;

}  // namespace zkt
