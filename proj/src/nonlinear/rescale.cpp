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


#include "zkt/nonlinear/rescale.hpp"

#include <algorithm>
#include <string>

#include "zkt/common/bits.hpp"

namespace zkt {

std::int64_t div_round(std::int64_t x, std::int64_t divisor) {
  std::int64_t shifted = x + divisor / 2;
  std::int64_t q = shifted / divisor;
  if (shifted % divisor != 0 && shifted < 0) --q;
  return q;
}

namespace {

void require_pow2(std::int64_t v, const char* what) {
  if (v < 2 || !is_pow2(static_cast<std::size_t>(v))) throw ParamError(std::string(what) + " must be a power of two >= 2");
}

std::vector<std::int64_t> split_radices(std::int64_t total, std::int64_t budget) {
  std::vector<std::int64_t> out;
  while (total > 1) {
    std::int64_t r = std::min(total, budget);
    out.push_back(r);
    total /= r;
  }
  return out;
}

}  // namespace

std::vector<std::int64_t> remainder_radices(const RescaleConfig& c) {
  require_pow2(c.divisor, "rescale divisor");
  require_pow2(c.digit_budget, "digit budget");
  return split_radices(c.divisor, c.digit_budget);
}

std::vector<std::int64_t> quotient_radices(const RescaleConfig& c) {
  require_pow2(c.quotient_range, "quotient range");
  require_pow2(c.digit_budget, "digit budget");
  return split_radices(c.quotient_range, c.digit_budget);
}

RescaleWitness rescale_compute(const std::vector<std::int64_t>& values, const RescaleConfig& c) {
  auto radices = remainder_radices(c);
  auto qradices = quotient_radices(c);
  RescaleWitness w;
  w.quotient.resize(values.size());
  w.digits.assign(radices.size(), std::vector<std::int64_t>(values.size()));
  w.quotient_digits.assign(qradices.size(), std::vector<std::int64_t>(values.size()));
  const std::int64_t half = c.quotient_range / 2;
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::int64_t q = div_round(values[i], c.divisor);
    if (q < -half || q >= half) {
      throw RangeError("rescaled value " + std::to_string(q) + " outside [" + std::to_string(-half) + ", " +
                       std::to_string(half) + ")");
    }
    w.quotient[i] = q;
    std::int64_t rem = values[i] - c.divisor * q + c.divisor / 2;
    for (std::size_t k = 0; k < radices.size(); ++k) {
      w.digits[k][i] = rem % radices[k];
      rem /= radices[k];
    }
    std::int64_t off = q + half;
    for (std::size_t k = 0; k < qradices.size(); ++k) {
      w.quotient_digits[k][i] = off % qradices[k];
      off /= qradices[k];
    }
  }
  return w;
}

}  // namespace zkt
