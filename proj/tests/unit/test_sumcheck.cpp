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
#include "zkt/oracle/reference.hpp"
#include "zkt/sumcheck/matmul.hpp"

namespace zkt {
namespace {

using Fr = Secp256k1Scalar;

Fr f(std::int64_t v) { return Fr::from_i64(v); }

std::vector<Fr> random_vec(Rng& rng, std::size_t n) {
  std::vector<Fr> v(n);
  for (auto& x : v) x = rng.field<Fr>();
  return v;
}

TEST(Oracle, NaiveMatmulExample) {
  std::vector<std::int64_t> a = {1, 2, 3, 4}, b = {5, 6, 7, 8};
  auto c = oracle::matmul_naive<std::int64_t>(a, b, 2, 2, 2);
  EXPECT_EQ(c, (std::vector<std::int64_t>{19, 22, 43, 50}));
}

TEST(Sumcheck, InterpolationRecoversCoefficients) {
  // 3 - 2X + 5X^2 + X^3
  std::vector<Fr> coeffs = {f(3), f(-2), f(5), f(1)};
  std::vector<Fr> ys;
  for (int x = 0; x < 4; ++x) ys.push_back(detail::horner(coeffs, f(x)));
  EXPECT_EQ(detail::interpolate_small(ys), coeffs);
}

Combination<Fr> random_combination(Rng& rng, unsigned vars) {
  Combination<Fr> c(vars);
  for (int j = 0; j < 4; ++j) c.add_table(random_vec(rng, std::size_t{1} << vars));
  c.add_term(rng.field<Fr>(), {0, 1, 2});
  c.add_term(f(-3), {3});
  c.add_term(f(7), {1, 3});
  c.add_term(f(2), {});
  return c;
}

TEST(Sumcheck, HonestProofVerifiesAndClaimsMatchTables) {
  Rng rng(20);
  for (unsigned vars : {0u, 1u, 5u, 8u}) {
    auto comb = random_combination(rng, vars);
    auto tables = comb.tables();
    auto shape = comb.shape();
    Fr sum = comb.sum();
    Transcript tp("sc");
    auto [proof, claims] = prove_sumcheck(comb, tp);
    for (std::size_t j = 0; j < tables.size(); ++j) {
      EXPECT_EQ(claims.values[j], oracle::mle_bruteforce<Fr>(tables[j], claims.point));
    }
    Transcript tv("sc");
    auto out = verify_sumcheck(shape, vars, sum, proof, tv);
    ASSERT_TRUE(out.has_value()) << vars;
    EXPECT_EQ(out->point, claims.point);
    EXPECT_EQ(tp.state(), tv.state());
  }
}

TEST(Sumcheck, RejectsWrongClaimAndTampering) {
  Rng rng(21);
  auto comb = random_combination(rng, 4);
  auto shape = comb.shape();
  Fr sum = comb.sum();
  Transcript tp("sc");
  auto proof = prove_sumcheck(comb, tp).first;
  auto run = [&](const SumcheckProof<Fr>& p, const Fr& claim) {
    Transcript tv("sc");
    return verify_sumcheck(shape, 4, claim, p, tv).has_value();
  };
  EXPECT_TRUE(run(proof, sum));
  EXPECT_FALSE(run(proof, sum + Fr::one()));
  auto bad = proof;
  bad.round_polys[2][1] += Fr::one();
  EXPECT_FALSE(run(bad, sum));
  bad = proof;
  bad.final_values[0] += Fr::one();
  EXPECT_FALSE(run(bad, sum));
  bad = proof;
  bad.round_polys[0].push_back(Fr::zero());
  EXPECT_FALSE(run(bad, sum));
  bad = proof;
  bad.round_polys.pop_back();
  EXPECT_THROW(run(bad, sum), DecodeError);
}

TEST(Sumcheck, SerializationRoundTrip) {
  Rng rng(22);
  auto comb = random_combination(rng, 3);
  Transcript tp("sc");
  auto proof = prove_sumcheck(comb, tp).first;
  ByteWriter w;
  proof.write(w);
  ByteReader r(w.bytes());
  auto back = SumcheckProof<Fr>::read(r);
  r.expect_done();
  EXPECT_EQ(back.round_polys, proof.round_polys);
  EXPECT_EQ(back.final_values, proof.final_values);
}

TEST(Matmul, SmallExampleProves) {
  std::vector<Fr> a = {f(1), f(2), f(3), f(4)}, b = {f(5), f(6), f(7), f(8)};
  auto c = oracle::matmul_naive<Fr>(a, b, 2, 2, 2);
  EXPECT_EQ(c, (std::vector<Fr>{f(19), f(22), f(43), f(50)}));
  MatmulDims dims{1, 1, 1};
  Rng rng(23);
  auto u = random_vec(rng, 1), v = random_vec(rng, 1);
  std::vector<Fr> uv = u;
  uv.push_back(v[0]);
  Fr claim = mle_evaluate(c, uv);
  Transcript tp("mm");
  auto [proof, pc] = prove_matmul<Fr>(a, b, dims, u, v, tp);
  Transcript tv("mm");
  auto vc = verify_matmul<Fr>(dims, u, v, claim, proof, tv);
  ASSERT_TRUE(vc.has_value());
  EXPECT_EQ(vc->a_value, mle_evaluate(a, vc->a_point));
  EXPECT_EQ(vc->b_value, mle_evaluate(b, vc->b_point));
}

TEST(Matmul, CorruptedProductRejected) {
  Rng rng(24);
  MatmulDims dims{3, 4, 2};
  auto a = random_vec(rng, 8 * 16), b = random_vec(rng, 16 * 4);
  auto c = oracle::matmul_naive<Fr>(a, b, 8, 16, 4);
  c[5] += Fr::one();
  auto u = random_vec(rng, 3), v = random_vec(rng, 2);
  std::vector<Fr> uv = u;
  uv.insert(uv.end(), v.begin(), v.end());
  Fr claim = mle_evaluate(c, uv);
  Transcript tp("mm");
  auto [proof, pc] = prove_matmul<Fr>(a, b, dims, u, v, tp);
  Transcript tv("mm");
  EXPECT_FALSE(verify_matmul<Fr>(dims, u, v, claim, proof, tv).has_value());
}

}  // namespace
}  // namespace zkt
