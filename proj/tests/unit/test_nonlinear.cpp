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

#include "zkt/nonlinear/activation.hpp"
#include "zkt/nonlinear/layernorm.hpp"
#include "zkt/nonlinear/relu.hpp"
#include "zkt/oracle/reference.hpp"

namespace zkt {
namespace {

using B = Secp256k1Backend;
using Fr = B::Scalar;

constexpr std::int64_t kGamma = 1 << 8;
constexpr std::int64_t kTheta = 1 << 16;

const PublicParams<B>& params() {
  static const auto pp = PublicParams<B>::keygen(16, std::vector<std::uint8_t>{7});
  return pp;
}

std::vector<std::int64_t> random_ints(Rng& rng, std::size_t n, double scale) {
  std::vector<std::int64_t> v(n);
  for (auto& x : v) x = std::llround(rng.normal() * scale);
  return v;
}

TEST(Rescale, RoundsHalfUp) {
  EXPECT_EQ(div_round(513, 256), 2);
  EXPECT_EQ(div_round(0, 256), 0);
  EXPECT_EQ(div_round(128, 256), 1);
  EXPECT_EQ(div_round(127, 256), 0);
  EXPECT_EQ(div_round(-128, 256), 0);
  EXPECT_EQ(div_round(-129, 256), -1);
}

TEST(Rescale, Examples) {
  RescaleConfig c{kGamma, 1 << 12, 1 << 8};
  auto w = rescale_compute({513, 0}, c);
  EXPECT_EQ(w.quotient, (std::vector<std::int64_t>{2, 0}));
  ASSERT_EQ(w.digits.size(), 1u);
  EXPECT_EQ(w.digits[0][0] - kGamma / 2, 1);
  EXPECT_EQ(w.digits[0][1] - kGamma / 2, 0);
}

TEST(Rescale, RemainderRadices) {
  EXPECT_EQ(remainder_radices({1 << 16, 16, 1 << 8}), (std::vector<std::int64_t>{256, 256}));
  EXPECT_EQ(remainder_radices({1 << 22, 16, 1 << 8}), (std::vector<std::int64_t>{256, 256, 64}));
  EXPECT_EQ(remainder_radices({1 << 4, 16, 1 << 8}), (std::vector<std::int64_t>{16}));
  EXPECT_THROW(remainder_radices({12, 16, 1 << 8}), ParamError);
}

TEST(Rescale, ReconstructionAndRangeExhaustive) {
  RescaleConfig c{1 << 6, 1 << 6, 1 << 4};
  auto radices = remainder_radices(c);
  std::vector<std::int64_t> values;
  for (std::int64_t z = -(1 << 11); z < (1 << 11) - 32; ++z) values.push_back(z);
  auto w = rescale_compute(values, c);
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::int64_t rem = 0, weight = 1;
    for (std::size_t k = 0; k < radices.size(); ++k) {
      ASSERT_GE(w.digits[k][i], 0);
      ASSERT_LT(w.digits[k][i], radices[k]);
      rem += weight * w.digits[k][i];
      weight *= radices[k];
    }
    rem -= c.divisor / 2;
    ASSERT_GE(rem, -c.divisor / 2);
    ASSERT_LT(rem, c.divisor / 2);
    ASSERT_EQ(c.divisor * w.quotient[i] + rem, values[i]);
  }
  EXPECT_THROW(rescale_compute({(1 << 11) - 32}, c), RangeError);
}

// Commits P as well, so the returned claim can be checked by opening it.
bool run_rescale(const std::vector<std::int64_t>& values, RescaleWitness w, const RescaleConfig& c,
                 std::uint64_t seed) {
  const auto& pp = params();
  auto tables = build_rescale_tables<B>(pp, c);
  Rng rng(seed);
  auto input = commit_hiding<B>(pp, to_field<Fr>(values), rng);
  auto committed = commit_rescale<B>(pp, w, rng);
  Transcript tp("rescale");
  auto [proof, claim] = rescale_prove<B>(pp, c, tables, committed, nullptr, {}, tp, rng);
  auto opening = prove_eval<B>(pp, input, claim.point, tp, rng);

  ByteWriter bw;
  proof.write(bw);
  ByteReader br(bw.bytes());
  auto decoded = RescaleProof<B>::read(br);
  br.expect_done();
  Transcript tv("rescale");
  auto vclaim = rescale_verify<B>(pp, c, tables, input.log_size(), {}, decoded, tv);
  if (!vclaim || vclaim->value != opening.value) return false;
  return verify_eval<B>(pp, input.com, vclaim->point, opening, tv);
}

TEST(Rescale, HonestProofVerifies) {
  RescaleConfig c{kTheta, 1 << 12, 1 << 8};
  Rng rng(60);
  auto values = random_ints(rng, 64, 300.0 * kTheta);
  EXPECT_TRUE(run_rescale(values, rescale_compute(values, c), c, 1));
}

TEST(Rescale, OutOfRangeDigitRejected) {
  RescaleConfig c{kGamma, 1 << 12, 1 << 8};
  Rng rng(61);
  auto values = random_ints(rng, 32, 100.0 * kGamma);
  auto w = rescale_compute(values, c);
  // Same reconstruction, but the remainder digit leaves its table.
  w.digits[0][3] += kGamma;
  w.quotient[3] -= 1;
  EXPECT_FALSE(run_rescale(values, w, c, 2));
}

TEST(Rescale, WrongQuotientRejected) {
  RescaleConfig c{kGamma, 1 << 12, 1 << 8};
  Rng rng(62);
  auto values = random_ints(rng, 32, 100.0 * kGamma);
  auto w = rescale_compute(values, c);
  w.quotient[0] += 1;
  EXPECT_FALSE(run_rescale(values, w, c, 3));
}

struct ReluRun {
  bool accepted;
};

bool run_relu(const std::vector<std::int64_t>& values, const ReluWitness& w, const RescaleConfig& c,
              std::uint64_t seed) {
  const auto& pp = params();
  auto tables = build_relu_tables<B>(pp, c);
  Rng rng(seed);
  auto input = commit_hiding<B>(pp, to_field<Fr>(values), rng);
  auto committed = commit_relu<B>(pp, w, rng);
  Transcript tp("relu");
  auto [proof, claim] = relu_prove<B>(pp, c, tables, committed, tp, rng);
  auto opening = prove_eval<B>(pp, input, claim.point, tp, rng);
  Transcript tv("relu");
  auto vclaim = relu_verify<B>(pp, c, tables, input.log_size(), proof, tv);
  if (!vclaim || vclaim->value != opening.value) return false;
  return verify_eval<B>(pp, input.com, vclaim->point, opening, tv);
}

TEST(Relu, Examples) {
  RescaleConfig c{kGamma, 1 << 12, 1 << 8};
  auto w = relu_compute({-5 * kGamma, 7 * kGamma}, c);
  EXPECT_EQ(w.rescale.quotient, (std::vector<std::int64_t>{-5, 7}));
  EXPECT_EQ(w.output, (std::vector<std::int64_t>{0, 7}));
}

TEST(Relu, FootprintIsRangePlusGamma) {
  RescaleConfig c{kGamma, 1 << 12, 1 << 8};
  auto tables = build_relu_tables<B>(params(), c);
  EXPECT_EQ(tables.footprint(), static_cast<std::size_t>((1 << 12) + kGamma));
}

TEST(Relu, HonestAndTampered) {
  RescaleConfig c{kGamma, 1 << 12, 1 << 8};
  Rng rng(63);
  auto values = random_ints(rng, 64, 200.0 * kGamma);
  auto w = relu_compute(values, c);
  EXPECT_TRUE(run_relu(values, w, c, 4));
  std::size_t neg = 0;
  while (w.rescale.quotient[neg] >= 0) ++neg;
  auto bad = w;
  bad.output[neg] = bad.rescale.quotient[neg];
  EXPECT_FALSE(run_relu(values, bad, c, 5));
}

TEST(Relu, QuantizationError) {
  RescaleConfig c{kGamma, 1 << 12, 1 << 8};
  Rng rng(64);
  auto values = random_ints(rng, 2000, 1.5 * kGamma * kGamma);
  auto w = relu_compute(values, c);
  const double g2 = static_cast<double>(kGamma * kGamma);
  for (std::size_t i = 0; i < values.size(); ++i) {
    double err = std::abs(w.output[i] / static_cast<double>(kGamma) - oracle::relu(values[i] / g2));
    ASSERT_LE(err, 0.5 / kGamma + 1e-12);
  }
}

ZkAttnParams sigmoid_params(double multiplier = 1.0) {
  return derive_params(sigmoid_config(kGamma, kTheta, multiplier, 1 << 12));
}

TEST(Sigmoid, Examples) {
  auto p = sigmoid_params();
  auto ys = sigmoid_values(sigmoid_compute({0, kGamma}, p));
  const double tol = p.eps_attn * kTheta;
  EXPECT_LE(std::abs(ys[0] - kTheta / 2.0), tol);
  EXPECT_LE(std::abs(ys[1] - 0.7310585786300049 * kTheta), tol);
}

TEST(Sigmoid, ErrorWithinBound) {
  auto p = sigmoid_params();
  Rng rng(65);
  auto z = random_ints(rng, 2048, 3.0 * kGamma);
  auto ys = sigmoid_values(sigmoid_compute(z, p));
  for (std::size_t i = 0; i < z.size(); ++i) {
    double err = std::abs(ys[i] / static_cast<double>(kTheta) - oracle::sigmoid(z[i] / static_cast<double>(kGamma)));
    ASSERT_LE(err, p.eps_attn);
  }
}

bool run_sigmoid(const std::vector<std::int64_t>& z, const AttnWitness& w, std::uint64_t seed) {
  const auto& pp = params();
  auto p = sigmoid_params();
  auto tables = build_tables<B>(pp, p);
  Rng rng(seed);
  auto input = commit_hiding<B>(pp, to_field<Fr>(z), rng);
  auto committed = commit_attention<B>(pp, w, rng);
  Transcript tp("sigmoid");
  auto proof = sigmoid_prove<B>(pp, p, tables, input, w, committed, tp, rng);
  Transcript tv("sigmoid");
  return sigmoid_verify<B>(pp, p, tables, input.com, proof, tv);
}

TEST(Sigmoid, ProofAndWrongInput) {
  auto p = sigmoid_params();
  Rng rng(66);
  auto z = random_ints(rng, 16, 2.0 * kGamma);
  auto w = sigmoid_compute(z, p);
  EXPECT_TRUE(run_sigmoid(z, w, 6));
  auto other = z;
  other[2] += 5;
  EXPECT_FALSE(run_sigmoid(other, w, 7));
}

bool run_gated(const std::vector<std::int64_t>& z, const std::vector<std::int64_t>* extra, const GatedWitness& w,
               const GatedConfig& c, std::uint64_t seed) {
  const auto& pp = params();
  auto tables = build_gated_tables<B>(pp, c);
  Rng rng(seed);
  auto zc = commit_hiding<B>(pp, to_field<Fr>(z), rng);
  std::optional<Committed<B>> ec;
  if (extra) ec = commit_hiding<B>(pp, to_field<Fr>(*extra), rng);
  auto committed = commit_gated<B>(pp, w, rng);
  Transcript tp("gated");
  auto proof = gated_prove<B>(pp, c, tables, zc, ec ? &*ec : nullptr, w, committed, tp, rng);
  ByteWriter bw;
  proof.write(bw);
  ByteReader br(bw.bytes());
  auto decoded = GatedProof<B>::read(br);
  br.expect_done();
  Transcript tv("gated");
  return gated_verify<B>(pp, c, tables, zc.com, ec ? &ec->com : nullptr, decoded, tv);
}

TEST(Gelu, ZeroMapsToZero) {
  auto c = gelu_config(kGamma, kTheta, 1 << 12, 1 << 12);
  auto w = gated_compute({0, 0}, nullptr, c);
  EXPECT_EQ(w.rescale.quotient, (std::vector<std::int64_t>{0, 0}));
}

TEST(Gelu, ErrorWithinBound) {
  auto c = gelu_config(kGamma, kTheta, 1 << 12, 1 << 12);
  Rng rng(67);
  auto z = random_ints(rng, 2048, 2.0 * kGamma);
  auto w = gated_compute(z, nullptr, c);
  for (std::size_t i = 0; i < z.size(); ++i) {
    double x = z[i] / static_cast<double>(kGamma);
    double err = std::abs(w.rescale.quotient[i] / static_cast<double>(kGamma) - oracle::gelu_sigmoid(x));
    ASSERT_LE(err, 0.5 / kGamma + std::abs(x) * c.sigmoid.eps_attn + 1e-12);
  }
}

TEST(Gelu, HonestAndTampered) {
  auto c = gelu_config(kGamma, kTheta, 1 << 12, 1 << 12);
  Rng rng(68);
  auto z = random_ints(rng, 16, 2.0 * kGamma);
  auto w = gated_compute(z, nullptr, c);
  EXPECT_TRUE(run_gated(z, nullptr, w, c, 8));
  auto bad = w;
  bad.rescale.quotient[4] += 1;
  bad.rescale.digits[0][4] = (bad.rescale.digits[0][4] + 1) % 256;
  EXPECT_FALSE(run_gated(z, nullptr, bad, c, 9));
}

TEST(Swiglu, SwishAtOne) {
  auto c = swiglu_config(kGamma, kTheta, 1.0, 1 << 12, 1 << 12);
  std::vector<std::int64_t> z{kGamma}, gate{kGamma};
  auto w = gated_compute(z, &gate, c);
  EXPECT_NEAR(w.rescale.quotient[0] / static_cast<double>(kGamma), 0.7310585786300049,
              0.5 / kGamma + c.sigmoid.eps_attn);
}

TEST(Swiglu, HonestAndWrongGate) {
  auto c = swiglu_config(kGamma, kTheta, 1.0, 1 << 12, 1 << 12);
  Rng rng(69);
  auto z = random_ints(rng, 16, 2.0 * kGamma);
  auto gate = random_ints(rng, 16, 2.0 * kGamma);
  auto w = gated_compute(z, &gate, c);
  EXPECT_TRUE(run_gated(z, &gate, w, c, 10));
  auto other = gate;
  other[7] += 3;
  EXPECT_FALSE(run_gated(z, &other, w, c, 11));
}

TEST(LayerNorm, ConstantRowGivesBias) {
  auto c = layernorm_config(kGamma, 4, 12, 16.0, 1 << 12);
  std::vector<std::int64_t> x{300, 300, 300, 300, -7, -7, -7, -7};
  std::vector<std::int64_t> gain(4, kGamma), bias(4, 0);
  auto w = layernorm_compute(x, 2, gain, bias, c);
  EXPECT_EQ(w.output.quotient, std::vector<std::int64_t>(8, 0));
}

TEST(LayerNorm, TwoElementRow) {
  auto c = layernorm_config(kGamma, 2, 12, 16.0, 1 << 12);
  std::vector<std::int64_t> gain(2, kGamma), bias(2, 0);
  auto w = layernorm_compute({kGamma, -kGamma}, 1, gain, bias, c);
  const double expect = kGamma / std::sqrt(1.0 + c.eps);
  EXPECT_LE(std::abs(w.output.quotient[0] - expect), 0.5 + 1e-9);
  EXPECT_LE(std::abs(w.output.quotient[1] + expect), 0.5 + 1e-9);
}

TEST(LayerNorm, ErrorWithinBound) {
  const unsigned n = 16;
  auto c = layernorm_config(kGamma, n, 14, 16.0, 1 << 14);
  Rng rng(70);
  const std::size_t rows = 64;
  auto x = random_ints(rng, rows * n, 1.5 * kGamma);
  auto gain = random_ints(rng, n, 0.5 * kGamma);
  auto bias = random_ints(rng, n, 0.3 * kGamma);
  auto w = layernorm_compute(x, rows, gain, bias, c);
  const double g = static_cast<double>(kGamma);
  std::vector<double> gd, bd;
  for (unsigned j = 0; j < n; ++j) {
    gd.push_back(gain[j] / g);
    bd.push_back(bias[j] / g);
  }
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<double> row;
    double mean = 0;
    for (unsigned j = 0; j < n; ++j) row.push_back(x[i * n + j] / g), mean += row.back() / n;
    double var = 0;
    for (double v : row) var += (v - mean) * (v - mean) / n;
    auto ref = oracle::layernorm(row, gd, bd, c.eps);
    double table_err = std::abs(w.inverse_std[i] / g - 1.0 / std::sqrt(var + c.eps));
    for (unsigned j = 0; j < n; ++j) {
      double err = std::abs(w.output.quotient[i * n + j] / g - ref[j]);
      ASSERT_LE(err, 0.5 / g + std::abs((row[j] - mean) * gd[j]) * table_err + 1e-9);
    }
  }
}

bool run_layernorm(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& gain,
                   const std::vector<std::int64_t>& bias, const LayerNormWitness& w, const LayerNormConfig& c,
                   std::uint64_t seed) {
  const auto& pp = params();
  auto tables = build_layernorm_tables<B>(pp, c);
  Rng rng(seed);
  auto xc = commit_hiding<B>(pp, to_field<Fr>(x), rng);
  auto gc = commit_hiding<B>(pp, to_field<Fr>(gain), rng);
  auto bc = commit_hiding<B>(pp, to_field<Fr>(bias), rng);
  auto committed = commit_layernorm<B>(pp, w, rng);
  Transcript tp("ln");
  auto proof = layernorm_prove<B>(pp, c, tables, xc, gc, bc, committed, tp, rng);
  ByteWriter bw;
  proof.write(bw);
  ByteReader br(bw.bytes());
  auto decoded = LayerNormProof<B>::read(br);
  br.expect_done();
  Transcript tv("ln");
  return layernorm_verify<B>(pp, c, tables, xc.com, gc.com, bc.com, decoded, tv);
}

struct LnCase {
  std::vector<std::int64_t> x, gain, bias;
  LayerNormConfig config;
  LayerNormWitness witness;
};

LnCase ln_case(std::uint64_t seed) {
  LnCase k;
  k.config = layernorm_config(kGamma, 8, 12, 16.0, 1 << 12);
  Rng rng(seed);
  k.x = random_ints(rng, 8 * 8, 1.0 * kGamma);
  k.gain = random_ints(rng, 8, 0.5 * kGamma);
  k.bias = random_ints(rng, 8, 0.3 * kGamma);
  k.witness = layernorm_compute(k.x, 8, k.gain, k.bias, k.config);
  return k;
}

TEST(LayerNorm, HonestProofVerifies) {
  auto k = ln_case(71);
  EXPECT_TRUE(run_layernorm(k.x, k.gain, k.bias, k.witness, k.config, 12));
}

TEST(LayerNorm, TamperedStatisticsRejected) {
  auto k = ln_case(72);
  auto bad = k.witness;
  bad.row_sums[2] += 1;
  EXPECT_FALSE(run_layernorm(k.x, k.gain, k.bias, bad, k.config, 13));
  bad = k.witness;
  bad.square_sums[1] += 1;
  EXPECT_FALSE(run_layernorm(k.x, k.gain, k.bias, bad, k.config, 14));
  bad = k.witness;
  bad.inverse_std[3] += 1;
  EXPECT_FALSE(run_layernorm(k.x, k.gain, k.bias, bad, k.config, 15));
}

TEST(LayerNorm, TamperedOutputOrGainRejected) {
  auto k = ln_case(73);
  auto bad = k.witness;
  bad.output.quotient[9] += 1;
  EXPECT_FALSE(run_layernorm(k.x, k.gain, k.bias, bad, k.config, 16));
  auto gain = k.gain;
  gain[0] += 1;
  EXPECT_FALSE(run_layernorm(k.x, gain, k.bias, k.witness, k.config, 17));
}

}  // namespace
}  // namespace zkt
