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


#include "zkt/oracle/selfcheck.hpp"

#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>

#include "zkt/mle/mle.hpp"
#include "zkt/nonlinear/activation.hpp"
#include "zkt/nonlinear/rescale.hpp"
#include "zkt/oracle/reference.hpp"
#include "zkt/polycommit/hyrax.hpp"
#include "zkt/tlookup/tlookup.hpp"
#include "zkt/zkattn/witness.hpp"

namespace zkt {
namespace {

using B = Secp256k1Backend;
using Fr = B::Scalar;

class Recorder {
 public:
  explicit Recorder(std::string name) { result_.name = std::move(name); }

  void check(bool cond, const std::string& what) {
    if (cond) {
      ++result_.passed;
    } else {
      ++result_.failed;
      result_.failures.push_back(what);
    }
  }

  // Exceptions count as failures of the named case.
  void run(const std::string& what, const std::function<bool()>& body) {
    bool ok = false;
    try {
      ok = body();
    } catch (const std::exception& e) {
      check(false, what + ": " + e.what());
      return;
    }
    check(ok, what);
  }

  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
};

std::vector<Fr> random_vector(Rng& rng, std::size_t n) {
  std::vector<Fr> v(n);
  for (auto& x : v) x = rng.field<Fr>();
  return v;
}

SuiteResult mle_suite(bool quick) {
  Recorder rec("mle");
  Rng rng(0x6d6c65);
  const unsigned max_vars = quick ? 8 : 12;
  for (unsigned d = 0; d <= max_vars; ++d) {
    const int reps = quick ? 2 : 5;
    for (int rep = 0; rep < reps; ++rep) {
      auto data = random_vector(rng, std::size_t{1} << d);
      auto point = random_vector(rng, d);
      rec.check(mle_evaluate<Fr>(data, point) == oracle::mle_bruteforce<Fr>(data, point),
                "mle_evaluate d=" + std::to_string(d));
    }
    // Boolean points pick out table entries.
    if (d > 0) {
      auto data = random_vector(rng, std::size_t{1} << d);
      std::size_t idx = rng.uniform(data.size());
      std::vector<Fr> point(d);
      for (unsigned k = 0; k < d; ++k) point[k] = ((idx >> (d - 1 - k)) & 1) ? Fr::one() : Fr::zero();
      rec.check(mle_evaluate<Fr>(data, point) == data[idx], "boolean point d=" + std::to_string(d));
    }
  }

  const unsigned open_vars = quick ? 6 : 10;
  auto pp = PublicParams<B>::keygen(open_vars, std::vector<std::uint8_t>{0x5c});
  for (unsigned d = 1; d <= open_vars; d += quick ? 5 : 3) {
    rec.run("prove_eval d=" + std::to_string(d), [&] {
      auto data = random_vector(rng, std::size_t{1} << d);
      auto point = random_vector(rng, d);
      auto c = commit_hiding<B>(pp, data, rng);
      Transcript tp("selfcheck");
      auto proof = prove_eval<B>(pp, c, point, tp, rng);
      Transcript tv("selfcheck");
      bool honest = proof.value == oracle::mle_bruteforce<Fr>(data, point) &&
                    verify_eval<B>(pp, c.com, point, proof, tv);
      proof.value += Fr::one();
      Transcript tw("selfcheck");
      return honest && !verify_eval<B>(pp, c.com, point, proof, tw);
    });
  }
  return rec.take();
}

SuiteResult lookup_suite(bool quick) {
  Recorder rec("lookup");
  Rng rng(0x6c6b70);
  const int reps = quick ? 20 : 200;
  for (int rep = 0; rep < reps; ++rep) {
    const std::size_t table_size = 8, input_size = 16;
    std::vector<Fr> table(table_size), input(input_size);
    for (std::size_t j = 0; j < table_size; ++j) table[j] = Fr::from_i64(static_cast<std::int64_t>(3 * j + rep));
    for (auto& s : input) s = table[rng.uniform(table_size)];
    auto m = compute_multiplicities<Fr>(input, table);
    Fr x = rng.field<Fr>();
    rec.check(oracle::rational_identity_holds<Fr>(input, table, m, x), "honest identity");
    input[rng.uniform(input_size)] = Fr::from_i64(-1 - rep);
    auto lenient = compute_multiplicities_lenient<Fr>(input, table);
    rec.check(!oracle::rational_identity_holds<Fr>(input, table, lenient, x), "non-member identity");
  }

  auto pp = PublicParams<B>::keygen(10, std::vector<std::uint8_t>{0x1c});
  auto table = tlookup_setup_range<B>(pp, 0, 64);
  const int runs = quick ? 2 : 6;
  for (int rep = 0; rep < runs; ++rep) {
    const bool honest = rep % 2 == 0;
    rec.run(std::string("tlookup ") + (honest ? "honest" : "non-member"), [&] {
      std::vector<Fr> input(256);
      for (auto& s : input) s = Fr::from_i64(static_cast<std::int64_t>(rng.uniform(64)));
      if (!honest) input[rng.uniform(input.size())] = Fr::from_i64(64 + static_cast<std::int64_t>(rng.uniform(64)));
      auto m = compute_multiplicities_lenient<Fr>(input, table.entries);
      auto c = commit_hiding<B>(pp, input, rng);
      Transcript tp("selfcheck-lookup");
      c.com.absorb_into(tp, "S");
      auto proof = tlookup_prove<B>(pp, c, m, table, tp, rng);
      Transcript tv("selfcheck-lookup");
      c.com.absorb_into(tv, "S");
      return tlookup_verify<B>(pp, c.com, table, proof, tv) == honest;
    });
  }
  return rec.take();
}

ZkAttnConfig small_attention_config() {
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

SuiteResult reference_suite(bool quick) {
  Recorder rec("reference");
  Rng rng(0x726566);

  auto p = derive_params(small_attention_config());
  const std::size_t rows = quick ? 16 : 128, cols = p.config.row_len;
  const double scale = p.exp_scale();
  const double theta = static_cast<double>(p.config.theta);
  std::vector<std::int64_t> logits(rows * cols);
  for (auto& z : logits) z = static_cast<std::int64_t>(rng.normal() * 2.0 * static_cast<double>(p.config.gamma));
  rec.run("softmax_compute", [&] {
    auto w = softmax_compute(logits, rows, cols, p);
    bool ok = true;
    for (std::size_t i = 0; i < rows; ++i) {
      std::vector<double> x(cols);
      for (std::size_t j = 0; j < cols; ++j) x[j] = static_cast<double>(logits[i * cols + j]) / scale;
      auto ref = oracle::softmax(x);
      double l1 = 0;
      for (std::size_t j = 0; j < cols; ++j) l1 += std::abs(static_cast<double>(w.output[i * cols + j]) / theta - ref[j]);
      bool row_ok = l1 <= p.eps_attn;
      rec.check(row_ok, "softmax row " + std::to_string(i));
      ok = ok && row_ok;
      rec.check(std::llabs(w.row_sums[i] - p.config.theta) <= p.tolerance, "row sum " + std::to_string(i));
    }
    return ok;
  });

  const std::int64_t gamma = 1 << 8;
  auto sp = derive_params(sigmoid_config(gamma, 1 << 8, 1.0, 1 << 12));
  std::vector<std::int64_t> zs;
  for (int i = 0; i < (quick ? 64 : 1024); ++i) zs.push_back(static_cast<std::int64_t>(rng.normal() * 3.0 * gamma));
  rec.run("sigmoid", [&] {
    auto ys = sigmoid_values(sigmoid_compute(zs, sp));
    bool ok = true;
    for (std::size_t i = 0; i < zs.size(); ++i) {
      double ref = oracle::sigmoid(static_cast<double>(zs[i]) / gamma);
      ok = ok && std::abs(static_cast<double>(ys[i]) / static_cast<double>(1 << 8) - ref) <= sp.eps_attn;
    }
    return ok;
  });

  for (int i = 0; i < (quick ? 200 : 5000); ++i) {
    std::int64_t x = static_cast<std::int64_t>(rng.uniform(1u << 20)) - (1 << 19);
    std::int64_t d = std::int64_t{1} << (1 + rng.uniform(12));
    std::int64_t ref = static_cast<std::int64_t>(std::floor(static_cast<double>(x) / static_cast<double>(d) + 0.5));
    rec.check(div_round(x, d) == ref, "div_round " + std::to_string(x) + "/" + std::to_string(d));
  }

  return rec.take();
}

}  // namespace

std::vector<SuiteResult> run_selfcheck(bool quick) {
  return {mle_suite(quick), lookup_suite(quick), reference_suite(quick)};
}

}  // namespace zkt
