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
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "zkt/algebra/limbs.hpp"
#include "zkt/common/errors.hpp"

namespace zkt {

namespace detail {

// -p^{-1} mod 2^64 by Newton iteration.
constexpr std::uint64_t mont_neg_inv(std::uint64_t p0) {
  std::uint64_t x = 1;
  for (int i = 0; i < 7; ++i) x *= 2 - p0 * x;
  return ~x + 1;
}

// 2^k mod p by repeated doubling.
template <std::size_t N>
constexpr Limbs<N> pow2_mod(const Limbs<N>& p, std::size_t k) {
  Limbs<N> x{};
  x[0] = 1;
  for (std::size_t i = 0; i < k; ++i) {
    std::uint64_t carry = limbs::add_in_place(x, x);
    if (carry || limbs::geq(x, p)) limbs::sub_in_place(x, p);
  }
  return x;
}

}  // namespace detail

// Prime field in Montgomery form. Params supplies kLimbs, kModulus (odd
// prime, little-endian limbs) and kName.
template <class Params>
class Fp {
 public:
  static constexpr std::size_t kLimbs = Params::kLimbs;
  using Repr = Limbs<kLimbs>;
  static constexpr Repr kModulus = Params::kModulus;
  static constexpr std::size_t kBits = limbs::bit_length(kModulus);
  static constexpr std::size_t kByteWidth = (kBits + 7) / 8;

  constexpr Fp() = default;

  static Fp zero() { return Fp(); }
  static Fp one() { return from_raw(kR); }

  static Fp from_u64(std::uint64_t x) {
    Repr r{};
    r[0] = x;
    if constexpr (kLimbs == 1) {
      if (r[0] >= kModulus[0]) r[0] -= kModulus[0];
    }
    return from_raw(mont_mul(r, kR2));
  }

  static Fp from_i64(std::int64_t x) {
    if (x >= 0) return from_u64(static_cast<std::uint64_t>(x));
    return -from_u64(static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(x));
  }

  // Exact value < p required.
  static Fp from_canonical(const Repr& c) {
    if (limbs::geq(c, kModulus)) throw DecodeError("field element not canonical");
    return from_raw(mont_mul(c, kR2));
  }

  // Fixed-width little-endian, rejects values >= p.
  static Fp from_bytes(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != kByteWidth) throw DecodeError("field element width");
    Repr c{};
    for (std::size_t i = 0; i < kByteWidth; ++i) {
      c[i / 8] |= static_cast<std::uint64_t>(bytes[i]) << (8 * (i % 8));
    }
    return from_canonical(c);
  }

  // Reduces an arbitrary-length little-endian string mod p.
  static Fp from_bytes_wide(std::span<const std::uint8_t> bytes) {
    Fp acc;
    const Fp shift = from_u64(std::uint64_t{1} << 32).square();
    std::size_t words = (bytes.size() + 7) / 8;
    for (std::size_t w = words; w-- > 0;) {
      std::uint64_t v = 0;
      for (std::size_t b = 8; b-- > 0;) {
        std::size_t idx = 8 * w + b;
        v = (v << 8) | (idx < bytes.size() ? bytes[idx] : 0);
      }
      Repr r{};
      r[0] = v;
      if constexpr (kLimbs == 1) {
        if (r[0] >= kModulus[0]) r[0] -= kModulus[0];
      }
      acc = acc * shift + from_raw(mont_mul(r, kR2));
    }
    return acc;
  }

  Repr to_canonical() const {
    Repr unit{};
    unit[0] = 1;
    return mont_mul(v_, unit);
  }

  std::array<std::uint8_t, kByteWidth> to_bytes() const {
    std::array<std::uint8_t, kByteWidth> out{};
    Repr c = to_canonical();
    for (std::size_t i = 0; i < kByteWidth; ++i) {
      out[i] = static_cast<std::uint8_t>(c[i / 8] >> (8 * (i % 8)));
    }
    return out;
  }

  // Signed reading of small values: x or -(p - x).
  std::int64_t to_i64() const {
    Repr c = to_canonical();
    if (fits_i63(c)) return static_cast<std::int64_t>(c[0]);
    Repr d = kModulus;
    limbs::sub_in_place(d, c);
    if (fits_i63(d)) return -static_cast<std::int64_t>(d[0]);
    throw RangeError("field element is not a small signed integer");
  }

  bool is_zero() const { return limbs::is_zero(v_); }
  bool is_one() const { return v_ == kR; }

  Fp operator+(const Fp& o) const {
    Fp r = *this;
    r += o;
    return r;
  }
  Fp operator-(const Fp& o) const {
    Fp r = *this;
    r -= o;
    return r;
  }
  Fp operator*(const Fp& o) const { return from_raw(mont_mul(v_, o.v_)); }
  Fp operator-() const {
    if (is_zero()) return *this;
    Repr r = kModulus;
    limbs::sub_in_place(r, v_);
    return from_raw(r);
  }

  Fp& operator+=(const Fp& o) {
    std::uint64_t carry = limbs::add_in_place(v_, o.v_);
    if (carry || limbs::geq(v_, kModulus)) limbs::sub_in_place(v_, kModulus);
    return *this;
  }
  Fp& operator-=(const Fp& o) {
    if (limbs::sub_in_place(v_, o.v_)) limbs::add_in_place(v_, kModulus);
    return *this;
  }
  Fp& operator*=(const Fp& o) {
    v_ = mont_mul(v_, o.v_);
    return *this;
  }

  bool operator==(const Fp& o) const { return v_ == o.v_; }
  bool operator!=(const Fp& o) const { return v_ != o.v_; }

  Fp square() const { return *this * *this; }
  Fp dbl() const { return *this + *this; }

  template <std::size_t M>
  Fp pow(const Limbs<M>& e) const {
    Fp r = one();
    for (std::size_t i = limbs::bit_length(e); i-- > 0;) {
      r = r.square();
      if (limbs::bit(e, i)) r *= *this;
    }
    return r;
  }
  Fp pow(std::uint64_t e) const { return pow(Limbs<1>{e}); }

  Fp inverse() const {
    if (is_zero()) throw DivisionByZero(0);
    Repr e = kModulus;
    Repr two{};
    two[0] = 2;
    limbs::sub_in_place(e, two);
    return pow(e);
  }

  std::string to_hex() const {
    static const char* digits = "0123456789abcdef";
    auto bytes = to_bytes();
    std::string s;
    for (std::size_t i = kByteWidth; i-- > 0;) {
      s += digits[bytes[i] >> 4];
      s += digits[bytes[i] & 15];
    }
    return s;
  }

  const Repr& raw() const { return v_; }

  struct Hash {
    std::size_t operator()(const Fp& x) const {
      std::size_t h = 0;
      for (auto w : x.v_) h = h * 0x9e3779b97f4a7c15ULL + w;
      return h;
    }
  };

 private:
  static constexpr std::uint64_t kInv = detail::mont_neg_inv(kModulus[0]);
  static constexpr Repr kR = detail::pow2_mod(kModulus, 64 * kLimbs);
  static constexpr Repr kR2 = detail::pow2_mod(kModulus, 128 * kLimbs);

  static Fp from_raw(const Repr& r) {
    Fp x;
    x.v_ = r;
    return x;
  }

  static bool fits_i63(const Repr& c) {
    for (std::size_t i = 1; i < kLimbs; ++i) {
      if (c[i] != 0) return false;
    }
    return c[0] < (std::uint64_t{1} << 63);
  }

  // CIOS Montgomery multiplication.
  static Repr mont_mul(const Repr& a, const Repr& b) {
    std::uint64_t t[kLimbs + 2] = {};
#pragma GCC unroll 4
    for (std::size_t i = 0; i < kLimbs; ++i) {
      std::uint64_t c = 0;
#pragma GCC unroll 4
      for (std::size_t j = 0; j < kLimbs; ++j) {
        u128 s = static_cast<u128>(a[j]) * b[i] + t[j] + c;
        t[j] = static_cast<std::uint64_t>(s);
        c = static_cast<std::uint64_t>(s >> 64);
      }
      u128 s = static_cast<u128>(t[kLimbs]) + c;
      t[kLimbs] = static_cast<std::uint64_t>(s);
      t[kLimbs + 1] = static_cast<std::uint64_t>(s >> 64);

      std::uint64_t m = t[0] * kInv;
      s = static_cast<u128>(m) * kModulus[0] + t[0];
      c = static_cast<std::uint64_t>(s >> 64);
#pragma GCC unroll 4
      for (std::size_t j = 1; j < kLimbs; ++j) {
        s = static_cast<u128>(m) * kModulus[j] + t[j] + c;
        t[j - 1] = static_cast<std::uint64_t>(s);
        c = static_cast<std::uint64_t>(s >> 64);
      }
      s = static_cast<u128>(t[kLimbs]) + c;
      t[kLimbs - 1] = static_cast<std::uint64_t>(s);
      t[kLimbs] = t[kLimbs + 1] + static_cast<std::uint64_t>(s >> 64);
    }
    Repr r;
    for (std::size_t i = 0; i < kLimbs; ++i) r[i] = t[i];
    if (t[kLimbs] != 0 || limbs::geq(r, kModulus)) limbs::sub_in_place(r, kModulus);
    return r;
  }

  Repr v_{};
};

}  // namespace zkt
