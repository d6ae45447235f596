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

#include <optional>

#include "zkt/nonlinear/rescale.hpp"
#include "zkt/sumcheck/hadamard.hpp"
#include "zkt/zkattn/zkattn.hpp"

namespace zkt {

// Sigmoid of a gamma-scaled vector z as a two-way softmax over rows (z, 0):
// sigma(m z / gamma) = softmax(z, 0)[0]. Outputs have scale theta.
ZkAttnConfig sigmoid_config(std::int64_t gamma, std::int64_t theta, double multiplier, std::int64_t budget);

std::vector<std::int64_t> sigmoid_logits(const std::vector<std::int64_t>& z);
AttnWitness sigmoid_compute(const std::vector<std::int64_t>& z, const ZkAttnParams& p);
// First column of the softmax output.
std::vector<std::int64_t> sigmoid_values(const AttnWitness& w);

template <GroupBackend G>
struct SigmoidProof {
  ZkAttnProof<G> attn;
  EvalProof<G> input_eval;

  const Commitment<G>& output_com() const { return attn.output_com; }

  void write(ByteWriter& w) const {
    attn.write(w);
    input_eval.write(w);
  }
  static SigmoidProof read(ByteReader& r) {
    SigmoidProof p;
    p.attn = ZkAttnProof<G>::read(r);
    p.input_eval = EvalProof<G>::read(r);
    return p;
  }
};

namespace detail {

// Output point of sigmoid entry q inside the interleaved (rows x 2) tensor.
template <class F>
std::vector<F> sigmoid_point(std::span<const F> q) {
  std::vector<F> p(q.begin(), q.end());
  p.push_back(F::zero());
  return p;
}

}  // namespace detail

template <GroupBackend G>
SigmoidProof<G> sigmoid_prove(const PublicParams<G>& pp, const ZkAttnParams& p, const AttnTables<G>& tables,
                              const Committed<G>& z, const AttnWitness& w, const AttnCommitted<G>& c,
                              Transcript& tr, Rng& rng) {
  using F = typename G::Scalar;
  SigmoidProof<G> proof;
  auto [attn, claim] = zkattn_prove<G>(pp, p, tables, w, c, tr, rng);
  proof.attn = std::move(attn);
  std::span<const F> pt(claim.point);
  proof.input_eval = prove_eval<G>(pp, z, pt.first(pt.size() - 1), tr, rng);
  return proof;
}

template <GroupBackend G>
bool sigmoid_verify(const PublicParams<G>& pp, const ZkAttnParams& p, const AttnTables<G>& tables,
                    const Commitment<G>& z, const SigmoidProof<G>& proof, Transcript& tr) {
  using F = typename G::Scalar;
  auto claim = zkattn_verify<G>(pp, p, tables, std::size_t{1} << z.log_size, 2, proof.attn, tr);
  if (!claim) return false;
  std::span<const F> pt(claim->point);
  // The zero column contributes nothing, so Z~(w, c) = z~(w) (1 - c).
  if (claim->value != proof.input_eval.value * (F::one() - pt.back())) return false;
  return verify_eval<G>(pp, z, pt.first(pt.size() - 1), proof.input_eval, tr);
}

// out = round(z * sigmoid(m z) * extra / divisor), with extra omitted for
// GELU (m = 1.702, divisor theta) and present for SwiGLU (divisor gamma theta).
struct GatedConfig {
  ZkAttnParams sigmoid;
  RescaleConfig rescale;
};

GatedConfig gelu_config(std::int64_t gamma, std::int64_t theta, std::int64_t budget, std::int64_t output_range);
GatedConfig swiglu_config(std::int64_t gamma, std::int64_t theta, double beta, std::int64_t budget,
                          std::int64_t output_range);

template <GroupBackend G>
struct GatedTables {
  AttnTables<G> sigmoid;
  RescaleTables<G> rescale;
};

template <GroupBackend G>
GatedTables<G> build_gated_tables(const PublicParams<G>& pp, const GatedConfig& c) {
  return GatedTables<G>{build_tables<G>(pp, c.sigmoid), build_rescale_tables<G>(pp, c.rescale)};
}

struct GatedWitness {
  AttnWitness sigmoid;
  RescaleWitness rescale;
};

GatedWitness gated_compute(const std::vector<std::int64_t>& z, const std::vector<std::int64_t>* extra,
                           const GatedConfig& c);

template <GroupBackend G>
struct GatedCommitted {
  AttnCommitted<G> sigmoid;
  RescaleCommitted<G> rescale;

  const Committed<G>& output() const { return rescale.quotient; }
};

template <GroupBackend G>
GatedCommitted<G> commit_gated(const PublicParams<G>& pp, const GatedWitness& w, Rng& rng) {
  return GatedCommitted<G>{commit_attention<G>(pp, w.sigmoid, rng), commit_rescale<G>(pp, w.rescale, rng)};
}

template <GroupBackend G>
struct GatedProof {
  SigmoidProof<G> sigmoid;
  RescaleProof<G> rescale;
  SumcheckProof<typename G::Scalar> product;
  BatchEvalProof<G> input_evals;  // z, then extra
  EvalProof<G> sigmoid_eval;

  const Commitment<G>& output_com() const { return rescale.quotient_com; }

  void write(ByteWriter& w) const {
    sigmoid.write(w);
    rescale.write(w);
    product.write(w);
    input_evals.write(w);
    sigmoid_eval.write(w);
  }
  static GatedProof read(ByteReader& r) {
    GatedProof p;
    p.sigmoid = SigmoidProof<G>::read(r);
    p.rescale = RescaleProof<G>::read(r);
    p.product = SumcheckProof<typename G::Scalar>::read(r);
    p.input_evals = BatchEvalProof<G>::read(r);
    p.sigmoid_eval = EvalProof<G>::read(r);
    return p;
  }
};

template <GroupBackend G>
GatedProof<G> gated_prove(const PublicParams<G>& pp, const GatedConfig& cfg, const GatedTables<G>& tables,
                          const Committed<G>& z, const Committed<G>* extra, const GatedWitness& w,
                          const GatedCommitted<G>& c, Transcript& tr, Rng& rng) {
  using F = typename G::Scalar;
  GatedProof<G> proof;
  proof.sigmoid = sigmoid_prove<G>(pp, cfg.sigmoid, tables.sigmoid, z, w.sigmoid, c.sigmoid, tr, rng);
  auto [rp, claim] = rescale_prove<G>(pp, cfg.rescale, tables.rescale, c.rescale, nullptr, {}, tr, rng);
  proof.rescale = std::move(rp);

  std::vector<std::vector<F>> factors{z.data, to_field<F>(sigmoid_values(w.sigmoid))};
  if (extra) factors.push_back(extra->data);
  auto [sc, sc_claims] = prove_hadamard<F>(std::move(factors), claim.point, tr);
  proof.product = std::move(sc);
  std::span<const F> wpt(sc_claims.point);
  std::vector<const Committed<G>*> inputs{&z};
  if (extra) inputs.push_back(extra);
  proof.input_evals = prove_eval_batch<G>(pp, inputs, wpt, tr, rng);
  proof.sigmoid_eval = prove_eval<G>(pp, c.sigmoid.output, detail::sigmoid_point<F>(wpt), tr, rng);
  return proof;
}

template <GroupBackend G>
bool gated_verify(const PublicParams<G>& pp, const GatedConfig& cfg, const GatedTables<G>& tables,
                  const Commitment<G>& z, const Commitment<G>* extra, const GatedProof<G>& proof, Transcript& tr) {
  using F = typename G::Scalar;
  if (extra && extra->log_size != z.log_size) return false;
  if (!sigmoid_verify<G>(pp, cfg.sigmoid, tables.sigmoid, z, proof.sigmoid, tr)) return false;
  auto claim = rescale_verify<G>(pp, cfg.rescale, tables.rescale, z.log_size, {}, proof.rescale, tr);
  if (!claim) return false;
  const std::size_t factors = extra ? 3 : 2;
  auto sc = verify_hadamard<F>(factors, claim->point, claim->value, proof.product, tr);
  if (!sc) return false;
  std::span<const F> wpt(sc->point);
  std::vector<F> expected{sc->values[0]};
  if (extra) expected.push_back(sc->values[2]);
  if (proof.input_evals.values != expected) return false;
  std::vector<const Commitment<G>*> inputs{&z};
  if (extra) inputs.push_back(extra);
  if (!verify_eval_batch<G>(pp, inputs, wpt, proof.input_evals, tr)) return false;
  if (proof.sigmoid_eval.value != sc->values[1]) return false;
  return verify_eval<G>(pp, proof.sigmoid.output_com(), detail::sigmoid_point<F>(wpt), proof.sigmoid_eval, tr);
}

}  // namespace zkt
