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
#include <vector>

#include "zkt/algebra/fields.hpp"

namespace zkt {

// Point on y^2 = x^3 + 7 in Jacobian coordinates (X/Z^2, Y/Z^3); Z = 0 is
// the identity.
class Secp256k1Point {
 public:
  using Base = Secp256k1Base;
  static constexpr std::size_t kEncodedSize = 33;
  using Encoding = std::array<std::uint8_t, kEncodedSize>;

  Secp256k1Point() : x_(Base::one()), y_(Base::one()), z_() {}

  static Secp256k1Point identity() { return Secp256k1Point(); }
  static Secp256k1Point from_affine(const Base& x, const Base& y) {
    return Secp256k1Point(x, y, Base::one());
  }
  static Secp256k1Point generator();
  // Try-and-increment onto the curve; nobody knows the discrete log of the
  // output with respect to any other output.
  static Secp256k1Point hash_to_curve(std::span<const std::uint8_t> msg);

  bool is_identity() const { return z_.is_zero(); }
  bool is_normalized() const { return z_.is_one(); }

  Secp256k1Point dbl() const {
    if (is_identity()) return *this;
    Base a = x_.square();
    Base b = y_.square();
    Base c = b.square();
    Base d = ((x_ + b).square() - a - c).dbl();
    Base e = a.dbl() + a;
    Base f = e.square();
    Base x3 = f - d.dbl();
    Base c8 = c.dbl().dbl().dbl();
    Base y3 = e * (d - x3) - c8;
    Base z3 = (y_ * z_).dbl();
    return Secp256k1Point(x3, y3, z3);
  }

  Secp256k1Point operator+(const Secp256k1Point& o) const {
    if (is_identity()) return o;
    if (o.is_identity()) return *this;
    if (o.is_normalized()) return add_mixed(o);
    if (is_normalized()) return o.add_mixed(*this);
    Base z1z1 = z_.square();
    Base z2z2 = o.z_.square();
    Base u1 = x_ * z2z2;
    Base u2 = o.x_ * z1z1;
    Base s1 = y_ * o.z_ * z2z2;
    Base s2 = o.y_ * z_ * z1z1;
    Base h = u2 - u1;
    Base r = (s2 - s1).dbl();
    if (h.is_zero()) {
      if (r.is_zero()) return dbl();
      return identity();
    }
    Base i = h.dbl().square();
    Base j = h * i;
    Base v = u1 * i;
    Base x3 = r.square() - j - v.dbl();
    Base y3 = r * (v - x3) - (s1 * j).dbl();
    Base z3 = ((z_ + o.z_).square() - z1z1 - z2z2) * h;
    return Secp256k1Point(x3, y3, z3);
  }

  // o must be normalized (Z = 1).
  Secp256k1Point add_mixed(const Secp256k1Point& o) const {
    if (o.is_identity()) return *this;
    if (is_identity()) return o;
    Base z1z1 = z_.square();
    Base u2 = o.x_ * z1z1;
    Base s2 = o.y_ * z_ * z1z1;
    Base h = u2 - x_;
    Base r = (s2 - y_).dbl();
    if (h.is_zero()) {
      if (r.is_zero()) return dbl();
      return identity();
    }
    Base hh = h.square();
    Base i = hh.dbl().dbl();
    Base j = h * i;
    Base v = x_ * i;
    Base x3 = r.square() - j - v.dbl();
    Base y3 = r * (v - x3) - (y_ * j).dbl();
    Base z3 = (z_ + h).square() - z1z1 - hh;
    return Secp256k1Point(x3, y3, z3);
  }

  Secp256k1Point operator-() const { return Secp256k1Point(x_, -y_, z_); }
  Secp256k1Point operator-(const Secp256k1Point& o) const { return *this + (-o); }
  Secp256k1Point& operator+=(const Secp256k1Point& o) { return *this = *this + o; }

  bool operator==(const Secp256k1Point& o) const {
    if (is_identity() || o.is_identity()) return is_identity() == o.is_identity();
    Base z1z1 = z_.square();
    Base z2z2 = o.z_.square();
    if (x_ * z2z2 != o.x_ * z1z1) return false;
    return y_ * z2z2 * o.z_ == o.y_ * z1z1 * z_;
  }
  bool operator!=(const Secp256k1Point& o) const { return !(*this == o); }

  Secp256k1Point normalized() const;
  static void batch_normalize(std::span<Secp256k1Point> points);

  // SEC1 compressed form; the identity encodes as all zero bytes.
  Encoding to_bytes() const;
  static Secp256k1Point from_bytes(std::span<const std::uint8_t> bytes);

  const Base& x() const { return x_; }
  const Base& y() const { return y_; }
  const Base& z() const { return z_; }

 private:
  Secp256k1Point(const Base& x, const Base& y, const Base& z) : x_(x), y_(y), z_(z) {}
  static bool lift_x(const Base& x, bool odd, Secp256k1Point* out);

  Base x_, y_, z_;
};

}  // namespace zkt
