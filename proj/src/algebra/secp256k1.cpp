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

#include "zkt/algebra/secp256k1.hpp"

#include "zkt/algebra/batch_inverse.hpp"
#include "zkt/algebra/hash.hpp"

namespace zkt {

namespace {

using Base = Secp256k1Base;

const Base& curve_b() {
  static const Base b = Base::from_u64(7);
  return b;
}

// p = 3 mod 4, so sqrt(a) = a^((p+1)/4) when a is a square.
const Base::Repr& sqrt_exponent() {
  static const Base::Repr e = [] {
    Base::Repr r = Base::kModulus;
    Base::Repr one{};
    one[0] = 1;
    limbs::add_in_place(r, one);
    return limbs::shr1(limbs::shr1(r));
  }();
  return e;
}

bool is_odd(const Base& v) { return v.to_canonical()[0] & 1; }

}  // namespace

Secp256k1Point Secp256k1Point::generator() {
  static const Secp256k1Point g = [] {
    const std::uint8_t enc[33] = {
        0x02, 0x79, 0xBE, 0x66, 0x7E, 0xF9, 0xDC, 0xBB, 0xAC, 0x55, 0xA0,
        0x62, 0x95, 0xCE, 0x87, 0x0B, 0x07, 0x02, 0x9B, 0xFC, 0xDB, 0x2D,
        0xCE, 0x28, 0xD9, 0x59, 0xF2, 0x81, 0x5B, 0x16, 0xF8, 0x17, 0x98};
    return from_bytes(enc);
  }();
  return g;
}

bool Secp256k1Point::lift_x(const Base& x, bool odd, Secp256k1Point* out) {
  Base rhs = x.square() * x + curve_b();
  Base y = rhs.pow(sqrt_exponent());
  if (y.square() != rhs) return false;
  if (is_odd(y) != odd) y = -y;
  *out = from_affine(x, y);
  return true;
}

Secp256k1Point Secp256k1Point::hash_to_curve(std::span<const std::uint8_t> msg) {
  for (std::uint64_t ctr = 0;; ++ctr) {
    Digest d0 = Sha256().update("zkt.secp256k1.h2c").update(msg).update_u64(ctr).finish();
    Digest d1 = Sha256().update(d0).update_u64(1).finish();
    std::uint8_t wide[64];
    std::copy(d0.begin(), d0.end(), wide);
    std::copy(d1.begin(), d1.end(), wide + 32);
    Base x = Base::from_bytes_wide(wide);
    Secp256k1Point p;
    if (lift_x(x, false, &p)) return p;
  }
}

Secp256k1Point Secp256k1Point::normalized() const {
  if (is_identity() || is_normalized()) return *this;
  Base zi = z_.inverse();
  Base zi2 = zi.square();
  return from_affine(x_ * zi2, y_ * zi2 * zi);
}

void Secp256k1Point::batch_normalize(std::span<Secp256k1Point> points) {
  std::vector<Base> zs;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!points[i].is_identity() && !points[i].is_normalized()) {
      zs.push_back(points[i].z_);
      idx.push_back(i);
    }
  }
  if (zs.empty()) return;
  std::vector<Base> inv = batch_inverse<Base>(zs);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    Secp256k1Point& p = points[idx[k]];
    Base zi2 = inv[k].square();
    p = from_affine(p.x_ * zi2, p.y_ * zi2 * inv[k]);
  }
}

Secp256k1Point::Encoding Secp256k1Point::to_bytes() const {
  Encoding out{};
  if (is_identity()) return out;
  Secp256k1Point a = normalized();
  auto xb = a.x_.to_bytes();
  out[0] = is_odd(a.y_) ? 0x03 : 0x02;
  // SEC1 is big-endian.
  for (std::size_t i = 0; i < 32; ++i) out[1 + i] = xb[31 - i];
  return out;
}

Secp256k1Point Secp256k1Point::from_bytes(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kEncodedSize) throw DecodeError("point encoding width");
  if (bytes[0] == 0) {
    for (auto b : bytes) {
      if (b != 0) throw DecodeError("non-canonical identity encoding");
    }
    return identity();
  }
  if (bytes[0] != 0x02 && bytes[0] != 0x03) throw DecodeError("point prefix");
  std::uint8_t le[32];
  for (std::size_t i = 0; i < 32; ++i) le[i] = bytes[32 - i];
  Base x = Base::from_bytes(le);
  Secp256k1Point p;
  if (!lift_x(x, bytes[0] == 0x03, &p)) throw DecodeError("point not on curve");
  return p;
}

}  // namespace zkt
