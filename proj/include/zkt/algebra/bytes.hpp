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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zkt/common/errors.hpp"

namespace zkt {

class ByteWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void raw(std::span<const std::uint8_t> data) { buf_.insert(buf_.end(), data.begin(), data.end()); }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    raw({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()});
  }
  void blob(std::span<const std::uint8_t> data) {
    u64(data.size());
    raw(data);
  }

  template <class F>
  void scalar(const F& x) {
    auto b = x.to_bytes();
    raw(b);
  }
  template <class F>
  void scalars(std::span<const F> xs) {
    u32(static_cast<std::uint32_t>(xs.size()));
    for (const auto& x : xs) scalar(x);
  }
  template <class F>
  void scalars(const std::vector<F>& xs) {
    scalars(std::span<const F>(xs));
  }
  template <class P>
  void point(const P& p) {
    auto b = p.to_bytes();
    raw(b);
  }
  template <class P>
  void points(const std::vector<P>& ps) {
    u32(static_cast<std::uint32_t>(ps.size()));
    for (const auto& p : ps) point(p);
  }

  const std::vector<std::uint8_t>& bytes() const { return buf_; }
  std::vector<std::uint8_t> take() { return std::move(buf_); }
  std::size_t size() const { return buf_.size(); }

 private:
  std::vector<std::uint8_t> buf_;
};

// Bounds-checked reader; every failure is a DecodeError.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u8() { return take(1)[0]; }
  std::uint32_t u32() {
    auto b = take(4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
  }
  std::uint64_t u64() {
    auto b = take(8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
  }
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  std::span<const std::uint8_t> take(std::size_t n) {
    if (n > remaining()) throw DecodeError("truncated input");
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::string str() {
    std::uint32_t n = u32();
    auto b = take(n);
    return std::string(b.begin(), b.end());
  }
  std::span<const std::uint8_t> blob() {
    std::uint64_t n = u64();
    if (n > remaining()) throw DecodeError("truncated blob");
    return take(static_cast<std::size_t>(n));
  }

  template <class F>
  F scalar() {
    return F::from_bytes(take(F::kByteWidth));
  }
  template <class F>
  std::vector<F> scalars() {
    std::size_t n = count(F::kByteWidth);
    std::vector<F> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(scalar<F>());
    return out;
  }
  template <class P>
  P point() {
    return P::from_bytes(take(P::kEncodedSize));
  }
  template <class P>
  std::vector<P> points() {
    std::size_t n = count(P::kEncodedSize);
    std::vector<P> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(point<P>());
    return out;
  }

  // Reads a u32 element count and checks it against the bytes left.
  std::size_t count(std::size_t element_size) {
    std::uint32_t n = u32();
    if (element_size > 0 && static_cast<std::uint64_t>(n) * element_size > remaining()) {
      throw DecodeError("element count exceeds input");
    }
    return n;
  }

  std::size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }
  void expect_done() const {
    if (!done()) throw DecodeError("trailing bytes");
  }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace zkt
