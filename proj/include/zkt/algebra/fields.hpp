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

#include "zkt/algebra/field.hpp"

namespace zkt {

// secp256k1 coordinate field, p = 2^256 - 2^32 - 977.
struct Secp256k1BaseParams {
  static constexpr std::size_t kLimbs = 4;
  static constexpr Limbs<4> kModulus = {0xFFFFFFFEFFFFFC2FULL, 0xFFFFFFFFFFFFFFFFULL,
                                        0xFFFFFFFFFFFFFFFFULL, 0xFFFFFFFFFFFFFFFFULL};
  static constexpr const char* kName = "secp256k1.base";
};

// secp256k1 group order; the proof system's scalar field.
struct Secp256k1ScalarParams {
  static constexpr std::size_t kLimbs = 4;
  static constexpr Limbs<4> kModulus = {0xBFD25E8CD0364141ULL, 0xBAAEDCE6AF48A03BULL,
                                        0xFFFFFFFFFFFFFFFEULL, 0xFFFFFFFFFFFFFFFFULL};
  static constexpr const char* kName = "secp256k1.scalar";
};

// 2^61 - 1, the small test field.
struct Mersenne61Params {
  static constexpr std::size_t kLimbs = 1;
  static constexpr Limbs<1> kModulus = {0x1FFFFFFFFFFFFFFFULL};
  static constexpr const char* kName = "m61";
};

// 52 * (2^61 - 1) + 1; its multiplicative group has a subgroup of order
// 2^61 - 1 used as the test commitment group.
struct Toy67Params {
  static constexpr std::size_t kLimbs = 2;
  static constexpr Limbs<2> kModulus = {0x7FFFFFFFFFFFFFCDULL, 0x6ULL};
  static constexpr const char* kName = "toy67";
};

using Secp256k1Base = Fp<Secp256k1BaseParams>;
using Secp256k1Scalar = Fp<Secp256k1ScalarParams>;
using M61 = Fp<Mersenne61Params>;
using Toy67 = Fp<Toy67Params>;

}  // namespace zkt
