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


#include <gtest/gtest.h>

#include "zkt/algebra/fields.hpp"
#include "zkt/algebra/rng.hpp"
#include "zkt/mle/mle.hpp"
#include "zkt/mle/tensor.hpp"

namespace zkt {
namespace {

using Fr = Secp256k1Scalar;

Fr f(std::int64_t v) { return Fr::from_i64(v); }

std::vector<Fr> random_vec(Rng& rng, std::size_t n) {
  std::vector<Fr> v(n);
  for (auto& x : v) x = rng.field<Fr>();
  return v;
}

// Sum over the hypercube of eq(point, x) * data[x].
Fr brute_mle(const std::vector<Fr>& data, const std::vector<Fr>& point) {
  Fr acc = Fr::zero();
  std::size_t n = point.size();
  for (std::size_t x = 0; x < data.size(); ++x) {
    Fr w = Fr::one();
    for (std::size_t k = 0; k < n; ++k) {
      bool bit = (x >> (n - 1 - k)) & 1;
      w *= bit ? point[k] : Fr::one() - point[k];
    }
    acc += w * data[x];
  }
  return acc;
}

TEST(Mle, TwoPointLineExtrapolates) {
  EXPECT_EQ(mle_evaluate<Fr>({f(3), f(5)}, {f(2)}), f(7));
}

TEST(Mle, EqOfScalars) {
  EXPECT_EQ(eq_eval<Fr>({f(2)}, {f(3)}), f(8));
}

TEST(Mle, EqTableOfAllOnes) {
  auto t = eq_table<Fr>({f(1), f(1)});
  EXPECT_EQ(t, (std::vector<Fr>{f(0), f(0), f(0), f(1)}));
}

TEST(Mle, EqTableIsBigEndian) {
  // Point (1, 0) selects index 0b10.
  auto t = eq_table<Fr>({f(1), f(0)});
  EXPECT_EQ(t, (std::vector<Fr>{f(0), f(0), f(1), f(0)}));
}

TEST(Mle, EvaluateMatchesBruteForce) {
  Rng rng(1);
  for (std::size_t d = 0; d <= 8; ++d) {
    auto data = random_vec(rng, std::size_t{1} << d);
    auto point = random_vec(rng, d);
    EXPECT_EQ(mle_evaluate(data, point), brute_mle(data, point)) << d;
  }
}

TEST(Mle, EvaluateAgreesOnHypercube) {
  Rng rng(2);
  auto data = random_vec(rng, 16);
  for (std::size_t x = 0; x < 16; ++x) {
    std::vector<Fr> point;
    for (int k = 3; k >= 0; --k) point.push_back(f((x >> k) & 1));
    EXPECT_EQ(mle_evaluate(data, point), data[x]);
  }
}

TEST(Mle, EqTableDotIsEvaluation) {
  Rng rng(3);
  auto data = random_vec(rng, 32);
  auto point = random_vec(rng, 5);
  auto eq = eq_table(point);
  Fr dot = Fr::zero();
  for (std::size_t i = 0; i < 32; ++i) dot += eq[i] * data[i];
  EXPECT_EQ(dot, mle_evaluate(data, point));
  EXPECT_EQ(eq[19], eq_eval<Fr>(point, {f(1), f(0), f(0), f(1), f(1)}));
}

TEST(Mle, PrefixThenSuffixFoldsCompose) {
  Rng rng(4);
  auto data = random_vec(rng, 64);
  auto point = random_vec(rng, 6);
  std::span<const Fr> p(point);
  auto lo = fold_prefix<Fr>(data, p.subspan(0, 2));
  EXPECT_EQ(mle_evaluate<Fr>(lo, p.subspan(2)), mle_evaluate(data, point));
  auto hi = fold_suffix<Fr>(data, p.subspan(4));
  EXPECT_EQ(mle_evaluate<Fr>(hi, p.subspan(0, 4)), mle_evaluate(data, point));
}

TEST(Mle, BindArbitraryVariables) {
  Rng rng(5);
  auto data = random_vec(rng, 32);
  auto point = random_vec(rng, 5);
  std::vector<std::optional<Fr>> assign = {point[0], std::nullopt, point[2], std::nullopt, point[4]};
  auto rest = bind_variables<Fr>(data, assign);
  ASSERT_EQ(rest.size(), 4u);
  EXPECT_EQ(mle_evaluate<Fr>(rest, {point[1], point[3]}), mle_evaluate(data, point));
}

TEST(Mle, PermuteVariables) {
  Rng rng(6);
  auto data = random_vec(rng, 8);
  auto point = random_vec(rng, 3);
  // out variable j is input variable order[j]
  std::vector<std::size_t> order = {2, 0, 1};
  auto perm = permute_variables<Fr>(data, order);
  std::vector<Fr> permuted_point = {point[2], point[0], point[1]};
  EXPECT_EQ(mle_evaluate(perm, permuted_point), mle_evaluate(data, point));
}

TEST(Mle, ShapeMismatchThrows) {
  EXPECT_THROW(mle_evaluate<Fr>({f(1), f(2), f(3), f(4)}, {f(1)}), ShapeError);
}

TEST(Tensor, PadsEachDimension) {
  std::vector<std::int64_t> v = {1, 2, 3, 4, 5, 6};
  auto t = Tensor<Fr>::from_ints({2, 3}, v);
  EXPECT_EQ(t.shape(), (std::vector<std::size_t>{2, 4}));
  EXPECT_EQ(t[2], f(3));
  EXPECT_EQ(t[3], f(0));
  EXPECT_EQ(t[4], f(4));
  EXPECT_EQ(t[6], f(6));
  EXPECT_EQ(t.log_size(), 3u);
}

}  // namespace
}  // namespace zkt
