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
#include <numeric>
#include <span>
#include <vector>

#include "zkt/common/bits.hpp"
#include "zkt/common/errors.hpp"

namespace zkt {

// Row-major field tensor. Every dimension is padded with zeros to a power
// of two, so the flat index is a bit string and the multilinear extension
// is well defined. Bit order is big-endian: variable 0 is the most
// significant bit of the flat index, i.e. the leading coordinate of the
// first dimension.
template <class F>
class Tensor {
 public:
  Tensor() = default;

  explicit Tensor(std::vector<std::size_t> logical_shape, int scale_log2 = 0)
      : scale_log2_(scale_log2) {
    for (auto d : logical_shape) {
      if (d == 0) throw ShapeError("zero-length dimension");
      shape_.push_back(next_pow2(d));
    }
    data_.assign(count(shape_), F::zero());
  }

  // values are laid out row-major in the logical (unpadded) shape.
  static Tensor from_values(const std::vector<std::size_t>& logical_shape,
                            std::span<const F> values, int scale_log2 = 0) {
    Tensor t(logical_shape, scale_log2);
    if (values.size() != count(logical_shape)) throw ShapeError("value count does not match shape");
    t.scatter(logical_shape, [&](std::size_t i) { return values[i]; });
    return t;
  }

  static Tensor from_ints(const std::vector<std::size_t>& logical_shape,
                          std::span<const std::int64_t> values, int scale_log2 = 0) {
    Tensor t(logical_shape, scale_log2);
    if (values.size() != count(logical_shape)) throw ShapeError("value count does not match shape");
    t.scatter(logical_shape, [&](std::size_t i) { return F::from_i64(values[i]); });
    return t;
  }

  // Wraps an already padded flat vector.
  static Tensor from_flat(std::vector<std::size_t> padded_shape, std::vector<F> data,
                          int scale_log2 = 0) {
    for (auto d : padded_shape) {
      if (!is_pow2(d)) throw ShapeError("padded shape must be powers of two");
    }
    if (data.size() != count(padded_shape)) throw ShapeError("data length does not match shape");
    Tensor t;
    t.shape_ = std::move(padded_shape);
    t.data_ = std::move(data);
    t.scale_log2_ = scale_log2;
    return t;
  }

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }
  unsigned log_size() const { return log2_exact(data_.size()); }
  unsigned log_dim(std::size_t axis) const { return log2_exact(shape_.at(axis)); }
  int scale_log2() const { return scale_log2_; }
  void set_scale_log2(int s) { scale_log2_ = s; }

  std::vector<F>& data() { return data_; }
  const std::vector<F>& data() const { return data_; }
  F& operator[](std::size_t i) { return data_[i]; }
  const F& operator[](std::size_t i) const { return data_[i]; }

  static std::size_t count(const std::vector<std::size_t>& shape) {
    return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
  }

 private:
  template <class Get>
  void scatter(const std::vector<std::size_t>& logical, Get get) {
    std::size_t n = count(logical);
    std::vector<std::size_t> idx(logical.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t flat = 0;
      for (std::size_t a = 0; a < logical.size(); ++a) flat = flat * shape_[a] + idx[a];
      data_[flat] = get(i);
      for (std::size_t a = logical.size(); a-- > 0;) {
        if (++idx[a] < logical[a]) break;
        idx[a] = 0;
      }
    }
  }

  std::vector<std::size_t> shape_;
  std::vector<F> data_;
  int scale_log2_ = 0;
};

}  // namespace zkt
