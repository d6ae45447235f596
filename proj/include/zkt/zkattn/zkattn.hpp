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
#include <vector>

#include "zkt/tlookup/tlookup.hpp"
#include "zkt/zkattn/params.hpp"
#include "zkt/zkattn/witness.hpp"

namespace zkt {

template <GroupBackend G>
struct AttnTables {
  std::vector<LookupTable<G>> digits;   // [0, b^(k)) for every segment
  std::vector<LookupTable<G>> outputs;  // segments L..K-1
  LookupTable<G> row_sum;               // [theta - E, theta + E]
};

template <GroupBackend G>
AttnTables<G> build_tables(const PublicParams<G>& pp, const ZkAttnParams& p) {
  using F = typename G::Scalar;
  AttnTables<G> t;
  for (unsigned k = 0; k < p.segments(); ++k) {
    t.digits.push_back(tlookup_setup_range<G>(pp, 0, p.radices[k]));
    if (k >= p.first_middle()) {
      std::vector<F> ys;
      for (auto y : segment_table(p, k)) ys.push_back(F::from_i64(y));
      t.outputs.push_back(tlookup_setup<G>(pp, std::move(ys)));
    }
  }
  t.row_sum = tlookup_setup_range<G>(pp, p.config.theta - p.tolerance, p.config.theta + p.tolerance + 1);
  return t;
}

template <class F>
std::vector<F> to_field(const std::vector<std::int64_t>& v) {
  std::vector<F> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = F::from_i64(v[i]);
  return out;
}

// Committed witness tensors. The logits Z are not committed here: the proof
// ends with a claim on Z that the caller discharges.
template <GroupBackend G>
struct AttnCommitted {
  Committed<G> shift;
  std::vector<Committed<G>> digits;
  std::vector<Committed<G>> segments;
  Committed<G> output;
  Committed<G> row_sums;
};

template <GroupBackend G>
AttnCommitted<G> commit_attention(const PublicParams<G>& pp, const AttnWitness& w, Rng& rng) {
  using F = typename G::Scalar;
  if (!is_pow2(w.rows) || !is_pow2(w.cols)) throw ShapeError("attention rows and columns must be powers of two");
  AttnCommitted<G> c;
  c.shift = commit_hiding<G>(pp, to_field<F>(w.shift), rng);
  for (const auto& d : w.digits) c.digits.push_back(commit_hiding<G>(pp, to_field<F>(d), rng));
  for (const auto& s : w.segments) c.segments.push_back(commit_hiding<G>(pp, to_field<F>(s), rng));
  c.output = commit_hiding<G>(pp, to_field<F>(w.output), rng);
  c.row_sums = commit_hiding<G>(pp, to_field<F>(w.row_sums), rng);
  return c;
}

template <GroupBackend G>
struct ZkAttnProof {
  Commitment<G> shift_com;
  std::vector<Commitment<G>> digit_coms;
  std::vector<Commitment<G>> segment_coms;
  Commitment<G> output_com;
  Commitment<G> row_sum_com;
  std::vector<TlookupProof<G>> digit_lookups;
  std::vector<TlookupProof<G>> segment_lookups;
  TlookupProof<G> row_sum_lookup;
  EvalProof<G> row_sum_eval;
  SumcheckProof<typename G::Scalar> sumcheck;
  BatchEvalProof<G> tensor_evals;  // digits, segments, output
  EvalProof<G> shift_eval;

  void write(ByteWriter& w) const {
    shift_com.write(w);
    w.u32(static_cast<std::uint32_t>(digit_coms.size()));
    for (const auto& c : digit_coms) c.write(w);
    w.u32(static_cast<std::uint32_t>(segment_coms.size()));
    for (const auto& c : segment_coms) c.write(w);
    output_com.write(w);
    row_sum_com.write(w);
    for (const auto& l : digit_lookups) l.write(w);
    for (const auto& l : segment_lookups) l.write(w);
    row_sum_lookup.write(w);
    row_sum_eval.write(w);
    sumcheck.write(w);
    tensor_evals.write(w);
    shift_eval.write(w);
  }
  static ZkAttnProof read(ByteReader& r) {
    ZkAttnProof p;
    p.shift_com = Commitment<G>::read(r);
    std::uint32_t k = r.u32();
    if (k > 64) throw DecodeError("too many segments");
    for (std::uint32_t i = 0; i < k; ++i) p.digit_coms.push_back(Commitment<G>::read(r));
    std::uint32_t s = r.u32();
    if (s > k) throw DecodeError("too many segment outputs");
    for (std::uint32_t i = 0; i < s; ++i) p.segment_coms.push_back(Commitment<G>::read(r));
    p.output_com = Commitment<G>::read(r);
    p.row_sum_com = Commitment<G>::read(r);
    for (std::uint32_t i = 0; i < k; ++i) p.digit_lookups.push_back(TlookupProof<G>::read(r));
    for (std::uint32_t i = 0; i < s; ++i) p.segment_lookups.push_back(TlookupProof<G>::read(r));
    p.row_sum_lookup = TlookupProof<G>::read(r);
    p.row_sum_eval = EvalProof<G>::read(r);
    p.sumcheck = SumcheckProof<typename G::Scalar>::read(r);
    p.tensor_evals = BatchEvalProof<G>::read(r);
    p.shift_eval = EvalProof<G>::read(r);
    return p;
  }
};

namespace detail {

template <class F>
SumOfProducts<F> attention_shape(const ZkAttnParams& p, const F& rho) {
  const unsigned K = p.segments(), L = p.first_middle();
  SumOfProducts<F> s;
  // 0 eq, 1..K digits, K+1 logits, K+2 shift, then segment outputs,
  // output, row eq.
  const std::size_t eq = 0, logits = K + 1, shift = K + 2, seg0 = K + 3;
  const std::size_t out = seg0 + (K - L), row_eq = out + 1;
  s.num_tables = row_eq + 1;
  for (unsigned k = 0; k < K; ++k) s.terms.push_back({F::from_i64(p.cumulative[k]), {eq, 1 + k}});
  s.terms.push_back({F::one(), {eq, logits}});
  s.terms.push_back({-F::one(), {eq, shift}});
  s.terms.push_back({rho, {eq, out}});
  std::vector<std::size_t> prod{eq};
  for (unsigned k = L; k < K; ++k) prod.push_back(seg0 + (k - L));
  s.terms.push_back({-rho, prod});
  s.terms.push_back({rho * rho, {row_eq, out}});
  return s;
}

template <class F>
std::vector<F> broadcast_rows(const std::vector<F>& per_row, std::size_t cols) {
  std::vector<F> out(per_row.size() * cols);
  for (std::size_t r = 0; r < per_row.size(); ++r) std::fill_n(out.begin() + r * cols, cols, per_row[r]);
  return out;
}

}  // namespace detail

// Proves the segmented softmax of the (uncommitted here) logits. Returns the
// proof and a claim on the logits tensor.
template <GroupBackend G>
std::pair<ZkAttnProof<G>, EvalClaim<typename G::Scalar>> zkattn_prove(
    const PublicParams<G>& pp, const ZkAttnParams& p, const AttnTables<G>& tables, const AttnWitness& w,
    const AttnCommitted<G>& c, Transcript& tr, Rng& rng) {
  using F = typename G::Scalar;
  const unsigned K = p.segments(), L = p.first_middle();
  const unsigned log_rows = log2_exact(w.rows), log_cols = log2_exact(w.cols);
  ZkAttnProof<G> proof;
  proof.shift_com = c.shift.com;
  for (const auto& d : c.digits) proof.digit_coms.push_back(d.com);
  for (const auto& s : c.segments) proof.segment_coms.push_back(s.com);
  proof.output_com = c.output.com;
  proof.row_sum_com = c.row_sums.com;

  c.shift.com.absorb_into(tr, "attn.shift");
  for (const auto& d : c.digits) d.com.absorb_into(tr, "attn.digit");
  for (const auto& s : c.segments) s.com.absorb_into(tr, "attn.segment");
  c.output.com.absorb_into(tr, "attn.output");
  c.row_sums.com.absorb_into(tr, "attn.row_sums");

  for (unsigned k = 0; k < K; ++k) {
    auto m = compute_multiplicities_lenient<F>(c.digits[k].data, tables.digits[k].entries);
    proof.digit_lookups.push_back(tlookup_prove<G>(pp, c.digits[k], std::move(m), tables.digits[k], tr, rng));
  }
  for (unsigned k = L; k < K; ++k) {
    proof.segment_lookups.push_back(function_lookup_prove<G>(pp, c.digits[k], c.segments[k - L], tables.digits[k],
                                                             tables.outputs[k - L], tr, rng));
  }
  {
    auto m = compute_multiplicities_lenient<F>(c.row_sums.data, tables.row_sum.entries);
    proof.row_sum_lookup = tlookup_prove<G>(pp, c.row_sums, std::move(m), tables.row_sum, tr, rng);
  }

  std::vector<F> r = tr.challenges<F>("attn.r", log_rows + log_cols);
  F rho = tr.challenge<F>("attn.rho");
  std::span<const F> r_row = std::span<const F>(r).subspan(0, log_rows);
  proof.row_sum_eval = prove_eval<G>(pp, c.row_sums, r_row, tr, rng);

  Combination<F> comb(log_rows + log_cols);
  comb.add_table(eq_table<F>(r));
  for (const auto& d : c.digits) comb.add_table(d.data);
  comb.add_table(to_field<F>(w.logits));
  comb.add_table(detail::broadcast_rows(c.shift.data, w.cols));
  for (const auto& s : c.segments) comb.add_table(s.data);
  comb.add_table(c.output.data);
  comb.add_table(detail::broadcast_rows(eq_table<F>(r_row), w.cols));
  auto shape = detail::attention_shape(p, rho);
  for (const auto& t : shape.terms) comb.add_term(t.coeff, t.factors);
  auto [sc, claims] = prove_sumcheck(std::move(comb), tr);
  proof.sumcheck = std::move(sc);

  std::span<const F> wpt(claims.point);
  std::vector<const Committed<G>*> batch;
  for (const auto& d : c.digits) batch.push_back(&d);
  for (const auto& s : c.segments) batch.push_back(&s);
  batch.push_back(&c.output);
  proof.tensor_evals = prove_eval_batch<G>(pp, batch, wpt, tr, rng);
  proof.shift_eval = prove_eval<G>(pp, c.shift, wpt.subspan(0, log_rows), tr, rng);

  EvalClaim<F> z_claim{claims.point, claims.values[K + 1]};
  return {std::move(proof), std::move(z_claim)};
}

// Returns the claim on the logits on success.
template <GroupBackend G>
std::optional<EvalClaim<typename G::Scalar>> zkattn_verify(const PublicParams<G>& pp, const ZkAttnParams& p,
                                                           const AttnTables<G>& tables, std::size_t rows,
                                                           std::size_t cols, const ZkAttnProof<G>& proof,
                                                           Transcript& tr) {
  using F = typename G::Scalar;
  const unsigned K = p.segments(), L = p.first_middle();
  if (!is_pow2(rows) || !is_pow2(cols)) return std::nullopt;
  const unsigned log_rows = log2_exact(rows), log_cols = log2_exact(cols);
  const unsigned log_size = log_rows + log_cols;
  if (proof.digit_coms.size() != K || proof.segment_coms.size() != K - L || proof.digit_lookups.size() != K ||
      proof.segment_lookups.size() != K - L) {
    return std::nullopt;
  }
  auto sized = [](const Commitment<G>& c, unsigned d) { return c.log_size == d; };
  if (!sized(proof.shift_com, log_rows) || !sized(proof.row_sum_com, log_rows) ||
      !sized(proof.output_com, log_size)) {
    return std::nullopt;
  }
  for (const auto& c : proof.digit_coms) {
    if (!sized(c, log_size)) return std::nullopt;
  }
  for (const auto& c : proof.segment_coms) {
    if (!sized(c, log_size)) return std::nullopt;
  }

  proof.shift_com.absorb_into(tr, "attn.shift");
  for (const auto& d : proof.digit_coms) d.absorb_into(tr, "attn.digit");
  for (const auto& s : proof.segment_coms) s.absorb_into(tr, "attn.segment");
  proof.output_com.absorb_into(tr, "attn.output");
  proof.row_sum_com.absorb_into(tr, "attn.row_sums");

  for (unsigned k = 0; k < K; ++k) {
    if (!tlookup_verify<G>(pp, proof.digit_coms[k], tables.digits[k], proof.digit_lookups[k], tr)) {
      return std::nullopt;
    }
  }
  for (unsigned k = L; k < K; ++k) {
    if (!function_lookup_verify<G>(pp, proof.digit_coms[k], proof.segment_coms[k - L], tables.digits[k],
                                   tables.outputs[k - L], proof.segment_lookups[k - L], tr)) {
      return std::nullopt;
    }
  }
  if (!tlookup_verify<G>(pp, proof.row_sum_com, tables.row_sum, proof.row_sum_lookup, tr)) return std::nullopt;

  std::vector<F> r = tr.challenges<F>("attn.r", log_size);
  F rho = tr.challenge<F>("attn.rho");
  std::span<const F> r_row = std::span<const F>(r).subspan(0, log_rows);
  if (!verify_eval<G>(pp, proof.row_sum_com, r_row, proof.row_sum_eval, tr)) return std::nullopt;

  auto shape = detail::attention_shape(p, rho);
  auto claims = verify_sumcheck(shape, log_size, rho * rho * proof.row_sum_eval.value, proof.sumcheck, tr);
  if (!claims) return std::nullopt;
  const auto& v = claims->values;
  std::span<const F> wpt(claims->point);
  std::span<const F> w_row = wpt.subspan(0, log_rows);
  const std::size_t seg0 = K + 3, out = seg0 + (K - L), row_eq = out + 1;
  if (v[0] != eq_eval<F>(r, wpt) || v[row_eq] != eq_eval<F>(r_row, w_row)) return std::nullopt;

  std::vector<const Commitment<G>*> batch;
  std::vector<F> expected;
  for (unsigned k = 0; k < K; ++k) {
    batch.push_back(&proof.digit_coms[k]);
    expected.push_back(v[1 + k]);
  }
  for (unsigned k = L; k < K; ++k) {
    batch.push_back(&proof.segment_coms[k - L]);
    expected.push_back(v[seg0 + (k - L)]);
  }
  batch.push_back(&proof.output_com);
  expected.push_back(v[out]);
  if (proof.tensor_evals.values != expected) return std::nullopt;
  if (!verify_eval_batch<G>(pp, batch, wpt, proof.tensor_evals, tr)) return std::nullopt;
  if (proof.shift_eval.value != v[K + 2]) return std::nullopt;
  if (!verify_eval<G>(pp, proof.shift_com, w_row, proof.shift_eval, tr)) return std::nullopt;
  return EvalClaim<F>{claims->point, v[K + 1]};
}

}  // namespace zkt
