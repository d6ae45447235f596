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

#include <algorithm>
#include <span>
#include <vector>

#include "zkt/algebra/limbs.hpp"
#include "zkt/common/errors.hpp"

namespace zkt {

namespace detail {

// Scalars above (p-1)/2 are handled as -(p - s) so small negative values
// (the common case for quantized tensors) cost as little as small positive
// ones.
template <class Scalar>
struct SignedDigits {
  typename Scalar::Repr magnitude;
  bool negative;
};

template <class Scalar>
SignedDigits<Scalar> signed_digits(const Scalar& s) {
  static const typename Scalar::Repr half = limbs::shr1(Scalar::kModulus);
  typename Scalar::Repr c = s.to_canonical();
  if (!limbs::geq(half, c)) {
    typename Scalar::Repr m = Scalar::kModulus;
    limbs::sub_in_place(m, c);
    return {m, true};
  }
  return {c, false};
}

inline std::size_t pick_window(std::size_t n, std::size_t bits) {
  std::size_t best = 1;
  double best_cost = 1e300;
  for (std::size_t c = 1; c <= 16; ++c) {
    double windows = static_cast<double>((bits + c - 1) / c);
    double cost = windows * (static_cast<double>(n) + 2.0 * static_cast<double>(1u << c)) +
                  static_cast<double>(bits);
    if (cost < best_cost) {
      best_cost = cost;
      best = c;
    }
  }
  return best;
}

}  // namespace detail

template <class Point, class Scalar>
Point scalar_mul(const Point& p, const Scalar& s) {
  auto d = detail::signed_digits(s);
  Point base = d.negative ? -p : p;
  Point table[16];
  table[0] = Point::identity();
  for (int i = 1; i < 16; ++i) table[i] = table[i - 1] + base;
  std::size_t bits = limbs::bit_length(d.magnitude);
  std::size_t top = (bits + 3) / 4;
  Point acc = Point::identity();
  for (std::size_t w = top; w-- > 0;) {
    acc = acc.dbl().dbl().dbl().dbl();
    std::uint64_t digit = limbs::window(d.magnitude, 4 * w, 4);
    if (digit) acc = acc + table[digit];
  }
  return acc;
}

// Pippenger bucket method. Throws ShapeError on length mismatch.
template <class Point, class Scalar>
Point msm(std::span<const Scalar> scalars, std::span<const Point> points) {
  if (scalars.size() != points.size()) throw ShapeError("msm: length mismatch");
  const std::size_t n = scalars.size();
  if (n == 0) return Point::identity();

  std::vector<typename Scalar::Repr> mags(n);
  std::vector<Point> bases;
  bases.reserve(n);
  std::size_t bits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto d = detail::signed_digits(scalars[i]);
    mags[i] = d.magnitude;
    bases.push_back(d.negative ? -points[i] : points[i]);
    bits = std::max(bits, limbs::bit_length(d.magnitude));
  }
  if (bits == 0) return Point::identity();
  if (n < 4) {
    Point acc = Point::identity();
    for (std::size_t i = 0; i < n; ++i) acc = acc + scalar_mul(points[i], scalars[i]);
    return acc;
  }
  Point::batch_normalize(bases);

  const std::size_t c = detail::pick_window(n, bits);
  const std::size_t windows = (bits + c - 1) / c;
  std::vector<Point> buckets((std::size_t{1} << c) - 1);
  Point acc = Point::identity();
  for (std::size_t w = windows; w-- > 0;) {
    for (std::size_t k = 0; k < c; ++k) acc = acc.dbl();
    std::fill(buckets.begin(), buckets.end(), Point::identity());
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t digit = limbs::window(mags[i], w * c, c);
      if (digit) {
        buckets[digit - 1] = buckets[digit - 1].add_mixed(bases[i]);
        any = true;
      }
    }
    if (!any) continue;
    Point running = Point::identity();
    Point sum = Point::identity();
    for (std::size_t b = buckets.size(); b-- > 0;) {
      running = running + buckets[b];
      sum = sum + running;
    }
    acc = acc + sum;
  }
  return acc;
}

template <class Point, class Scalar>
Point msm(const std::vector<Scalar>& scalars, const std::vector<Point>& points) {
  return msm(std::span<const Scalar>(scalars), std::span<const Point>(points));
}

}  // namespace zkt
