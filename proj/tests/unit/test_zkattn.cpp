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

#include <cmath>

#include "zkt/oracle/reference.hpp"
#include "zkt/zkattn/zkattn.hpp"

namespace zkt {
namespace {

using B = Secp256k1Backend;
using Fr = B::Scalar;

ZkAttnConfig toy_config() {
  ZkAttnConfig c;
  c.gamma = 1 << 8;
  c.theta = 1 << 8;
  c.head_dim = 4;
  c.row_len = 16;
  c.segments = 3;
  c.top_segments = 1;
  c.low_segments = 1;
  c.budgets = {256, 256, 256};
  return c;
}

// Small enough for exhaustive checks: B = 2^12.
ZkAttnConfig tiny_config() {
  ZkAttnConfig c;
  c.gamma = 1 << 2;
  c.theta = 1 << 8;
  c.head_dim = 4;
  c.row_len = 4;
  c.segments = 4;
  c.top_segments = 1;
  c.low_segments = 1;
  c.budgets = {4, 8, 8, 16};
  return c;
}

std::vector<double> softmax_ref(const std::vector<std::int64_t>& row, double scale) {
  std::vector<double> x;
  for (auto v : row) x.push_back(static_cast<double>(v) / scale);
  return oracle::softmax(x);
}

TEST(AttnParams, K5L3Preset) {
  auto p = derive_params(k5l3_config(64, 64));
  EXPECT_EQ(p.radices, (std::vector<std::int64_t>{4, 4, 4, 65301, 65536}));
  EXPECT_EQ(p.low_bound(), 64);
  EXPECT_EQ(p.top_bound(), 64 * 65301);
  EXPECT_DOUBLE_EQ(p.segment_scale[3], 65536.0);
  EXPECT_NEAR(p.shift_target, 4179200.6135, 1e-3);
  EXPECT_NEAR(p.eps_attn, 0.0439710478602335, 1e-12);
  EXPECT_EQ(p.tolerance, 2882);
}

TEST(AttnParams, ToyFormulaOracle) {
  auto p = derive_params(toy_config());
  EXPECT_EQ(p.radices, (std::vector<std::int64_t>{10, 231, 256}));
  EXPECT_NEAR(p.shift_target, 2306.793816903498, 1e-9);
  EXPECT_DOUBLE_EQ(p.segment_scale[1], 256.0);
  EXPECT_NEAR(p.eps_attn, 0.3624970557275973, 1e-12);
  EXPECT_EQ(p.tolerance, 93);
}

TEST(AttnParams, ScalesMultiplyToTheta) {
  ZkAttnConfig c = toy_config();
  c.theta = 1 << 16;
  c.segments = 4;
  c.budgets = {256, 256, 256, 256};
  auto p = derive_params(c);
  double prod = 1;
  for (auto s : p.segment_scale) prod *= s;
  EXPECT_NEAR(prod, 65536.0, 1e-6);
  EXPECT_EQ(p.segment_scale[0], 1.0);
  EXPECT_EQ(p.segment_scale[3], 1.0);
}

TEST(AttnParams, Infeasible) {
  ZkAttnConfig c = toy_config();
  c.budgets = {2, 2, 2};
  EXPECT_THROW(derive_params(c), ParamError);
  c = toy_config();
  c.theta = 100;
  EXPECT_THROW(derive_params(c), ParamError);
  c = toy_config();
  c.low_segments = 2;
  EXPECT_THROW(derive_params(c), ParamError);
}

TEST(AttnParams, PerturbingMiddleScalesNeverHelps) {
  Rng rng(50);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    ZkAttnConfig c;
    c.gamma = std::int64_t{1} << (4 + rng.uniform(6));
    c.theta = c.gamma << (6 + rng.uniform(8));
    c.head_dim = 1u << rng.uniform(7);
    c.row_len = 2u << rng.uniform(7);
    c.segments = 4 + static_cast<unsigned>(rng.uniform(2));
    c.top_segments = 1;
    c.low_segments = c.segments - 3;
    c.budgets.assign(c.segments, std::int64_t{1} << (8 + rng.uniform(6)));
    auto p = derive_params(c);
    double base = p.table_rounding_bound();
    for (unsigned i = p.first_middle(); i < p.first_top(); ++i) {
      for (unsigned j = p.first_middle(); j < p.first_top(); ++j) {
        if (i == j) continue;
        for (double f : {2.0, 0.5}) {
          auto scales = p.segment_scale;
          scales[i] *= f;
          scales[j] /= f;
          EXPECT_GE(p.table_rounding_bound(scales), base * (1 - 1e-12)) << p.describe();
          ++checked;
        }
      }
    }
  }
  EXPECT_EQ(checked, 20 * 4);
}

TEST(AttnDigits, ExampleAndBijection) {
  EXPECT_EQ(to_digits(13, {4, 4}), (std::vector<std::int64_t>{1, 3}));
  std::vector<std::int64_t> radices = {3, 5, 4};
  for (std::int64_t x = 0; x < 60; ++x) EXPECT_EQ(from_digits(to_digits(x, radices), radices), x);
  EXPECT_THROW(to_digits(60, radices), RangeError);
}

TEST(AttnTables, SegmentOutputs) {
  auto p = derive_params(toy_config());
  auto mid = segment_table(p, 1);
  EXPECT_EQ(mid[0], static_cast<std::int64_t>(std::nearbyint(p.segment_scale[1])));
  for (std::size_t x = 1; x < mid.size(); ++x) EXPECT_LE(mid[x], mid[x - 1]);
  auto top = segment_table(p, 2);
  EXPECT_EQ(top[0], 1);
  EXPECT_EQ(top[3], 0);
}

TEST(AttnWitness, ReconstructionExhaustive) {
  auto p = derive_params(tiny_config());
  ASSERT_LE(p.input_bound(), 1 << 12);
  const double s = p.exp_scale();
  std::vector<std::int64_t> logits;
  for (std::int64_t z = 0; z > -p.input_bound(); --z) logits.push_back(z);
  std::vector<std::int64_t> shift(logits.size(), 0);
  auto w = softmax_with_shift(logits, logits.size(), 1, shift, p);
  for (std::size_t i = 0; i < logits.size(); ++i) {
    auto digits = to_digits(-logits[i], p.radices);
    std::int64_t expect = 1;
    for (unsigned k = p.first_middle(); k < p.segments(); ++k) {
      std::int64_t y;
      if (p.is_top(k)) {
        y = digits[k] == 0;
      } else {
        y = static_cast<std::int64_t>(
            std::nearbyint(p.segment_scale[k] * std::exp(-static_cast<double>(p.cumulative[k] * digits[k]) / s)));
      }
      expect *= y;
    }
    ASSERT_EQ(w.output[i], expect) << logits[i];
    for (unsigned k = 0; k < p.segments(); ++k) ASSERT_EQ(w.digits[k][i], digits[k]);
  }
}

TEST(AttnWitness, TwoElementSoftmax) {
  ZkAttnConfig c = k5l3_config(64, 2);
  auto p = derive_params(c);
  double scale = p.exp_scale();
  std::vector<std::int64_t> z = {static_cast<std::int64_t>(scale), 0};
  auto w = softmax_compute(z, 1, 2, p);
  double y0 = static_cast<double>(w.output[0]) / c.theta, y1 = static_cast<double>(w.output[1]) / c.theta;
  EXPECT_NEAR(y0, 0.7311, 1e-4);
  EXPECT_NEAR(y1, 0.2689, 1e-4);
  EXPECT_LE(std::abs(y0 - 0.7310585786300049) + std::abs(y1 - 0.2689414213699951), p.eps_attn);
}

TEST(AttnWitness, ConstantRowIsUniform) {
  auto p = derive_params(toy_config());
  std::vector<std::int64_t> z(16, 1234);
  auto w = softmax_compute(z, 1, 16, p);
  for (auto y : w.output) EXPECT_NEAR(static_cast<double>(y), 256.0 / 16, 1.0);
  EXPECT_LE(std::abs(w.row_sums[0] - 256), p.tolerance);
}

TEST(AttnWitness, ErrorWithinBound) {
  auto p = derive_params(toy_config());
  Rng rng(51);
  const double s = p.exp_scale();
  for (int row = 0; row < 200; ++row) {
    std::vector<std::int64_t> z(16);
    for (auto& v : z) v = static_cast<std::int64_t>(std::llround(rng.normal() * 2.0 * s));
    auto w = softmax_compute(z, 1, 16, p);
    auto ref = softmax_ref(z, s);
    double l1 = 0;
    for (int i = 0; i < 16; ++i) l1 += std::abs(static_cast<double>(w.output[i]) / p.config.theta - ref[i]);
    EXPECT_LE(l1, p.eps_attn);
    EXPECT_LE(std::abs(w.row_sums[0] - p.config.theta), p.tolerance);
  }
}

TEST(AttnWitness, OutOfRangeThrows) {
  auto p = derive_params(toy_config());
  std::vector<std::int64_t> z = {0, -p.input_bound() - 10};
  EXPECT_THROW(softmax_compute(z, 1, 2, p), RangeError);
}

struct AttnRun {
  bool accepted;
  bool z_claim_ok;
};

AttnRun run_attention(const AttnWitness& w, const ZkAttnParams& p, std::uint64_t seed) {
  static const auto pp = PublicParams<B>::keygen(16, std::vector<std::uint8_t>{9});
  auto tables = build_tables<B>(pp, p);
  Rng rng(seed);
  auto committed = commit_attention<B>(pp, w, rng);
  Transcript tp("attn");
  auto [proof, claim] = zkattn_prove<B>(pp, p, tables, w, committed, tp, rng);
  ByteWriter bw;
  proof.write(bw);
  ByteReader br(bw.bytes());
  auto decoded = ZkAttnProof<B>::read(br);
  br.expect_done();
  Transcript tv("attn");
  auto vclaim = zkattn_verify<B>(pp, p, tables, w.rows, w.cols, decoded, tv);
  if (!vclaim) return {false, false};
  Fr z_value = mle_evaluate<Fr>(to_field<Fr>(w.logits), vclaim->point);
  return {true, z_value == vclaim->value};
}

std::vector<std::int64_t> random_logits(Rng& rng, std::size_t n, double scale) {
  std::vector<std::int64_t> z(n);
  for (auto& v : z) v = static_cast<std::int64_t>(std::llround(rng.normal() * scale));
  return z;
}

TEST(ZkAttn, HonestProofVerifies) {
  auto p = derive_params(toy_config());
  Rng rng(52);
  auto w = softmax_compute(random_logits(rng, 8 * 16, 2 * p.exp_scale()), 8, 16, p);
  auto run = run_attention(w, p, 1);
  EXPECT_TRUE(run.accepted);
  EXPECT_TRUE(run.z_claim_ok);
}

TEST(ZkAttn, ShiftedNormalizationRejected) {
  auto p = derive_params(toy_config());
  Rng rng(53);
  auto logits = random_logits(rng, 4 * 16, 2 * p.exp_scale());
  auto honest = softmax_compute(logits, 4, 16, p);
  auto shift = honest.shift;
  shift[1] += p.config.gamma;
  auto w = softmax_with_shift(logits, 4, 16, shift, p);
  ASSERT_GT(std::abs(w.row_sums[1] - p.config.theta), p.tolerance);
  EXPECT_FALSE(run_attention(w, p, 2).accepted);
}

TEST(ZkAttn, BrokenDecompositionRejected) {
  auto p = derive_params(toy_config());
  Rng rng(54);
  auto w = softmax_compute(random_logits(rng, 4 * 16, 2 * p.exp_scale()), 4, 16, p);
  w.digits[1][0] = (w.digits[1][0] + 1) % p.radices[1];
  // Keep the segment output consistent with the tampered digit.
  auto table = segment_table(p, 1);
  w.segments[0][0] = table[w.digits[1][0]];
  EXPECT_FALSE(run_attention(w, p, 3).accepted);
}

TEST(ZkAttn, WrongLogitsClaimDetected) {
  auto p = derive_params(toy_config());
  Rng rng(55);
  auto w = softmax_compute(random_logits(rng, 4 * 16, 2 * p.exp_scale()), 4, 16, p);
  w.logits[5] += 1;
  auto run = run_attention(w, p, 4);
  // The protocol output is a claim on Z; with inconsistent Z it cannot be
  // both accepted and match the real logits.
  EXPECT_FALSE(run.accepted && run.z_claim_ok);
}

}  // namespace
}  // namespace zkt
