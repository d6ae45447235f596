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

namespace zkt {

// Row-wise LayerNorm of a gamma-scaled rows x n matrix X.
//   S = row sums, D = n X - S, Q = sum_j D^2 = n^3 gamma^2 var
//   V = round(Q / 2^variance_shift), looked up with R = round(gamma / sqrt(var + eps))
//   out = round((D R g + n gamma^2 b) / (n gamma^2))
struct LayerNormConfig {
  std::int64_t gamma = 1 << 8;
  unsigned row_len = 64;
  double eps = 1e-5;
  unsigned variance_shift = 20;
  std::int64_t variance_range = 1 << 16;  // V in [0, variance_range)
  std::int64_t output_range = 1 << 16;
  std::int64_t digit_budget = 1 << 8;

  RescaleConfig variance_rescale() const;
  RescaleConfig output_rescale() const;
  // Variance in real units represented by table entry v.
  double variance_of(std::int64_t v) const;
  std::int64_t inverse_std(std::int64_t v) const;
};

// Picks the smallest shift that keeps variances up to max_variance inside a
// table of 2^table_bits entries.
LayerNormConfig layernorm_config(std::int64_t gamma, unsigned row_len, unsigned table_bits, double max_variance,
                                 std::int64_t output_range, double eps = 1e-5);

struct LayerNormWitness {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> row_sums;
  std::vector<std::int64_t> square_sums;
  RescaleWitness variance;
  std::vector<std::int64_t> inverse_std;
  RescaleWitness output;
};

LayerNormWitness layernorm_compute(const std::vector<std::int64_t>& x, std::size_t rows,
                                   const std::vector<std::int64_t>& gain, const std::vector<std::int64_t>& bias,
                                   const LayerNormConfig& c);

template <GroupBackend G>
struct LayerNormTables {
  RescaleTables<G> variance;
  LookupTable<G> variance_domain;
  LookupTable<G> inverse_std;
  RescaleTables<G> output;
};

template <GroupBackend G>
LayerNormTables<G> build_layernorm_tables(const PublicParams<G>& pp, const LayerNormConfig& c) {
  using F = typename G::Scalar;
  LayerNormTables<G> t;
  t.variance = build_rescale_tables<G>(pp, c.variance_rescale());
  t.variance_domain = tlookup_setup_range<G>(pp, 0, c.variance_range);
  std::vector<F> ys;
  ys.reserve(static_cast<std::size_t>(c.variance_range));
  for (std::int64_t v = 0; v < c.variance_range; ++v) ys.push_back(F::from_i64(c.inverse_std(v)));
  t.inverse_std = tlookup_setup<G>(pp, std::move(ys));
  t.output = build_rescale_tables<G>(pp, c.output_rescale());
  return t;
}

template <GroupBackend G>
struct LayerNormCommitted {
  Committed<G> row_sums;
  Committed<G> square_sums;
  RescaleCommitted<G> variance;
  Committed<G> inverse_std;
  RescaleCommitted<G> output;
};

template <GroupBackend G>
LayerNormCommitted<G> commit_layernorm(const PublicParams<G>& pp, const LayerNormWitness& w, Rng& rng) {
  using F = typename G::Scalar;
  LayerNormCommitted<G> c;
  c.row_sums = commit_hiding<G>(pp, to_field<F>(w.row_sums), rng);
  c.square_sums = commit_hiding<G>(pp, to_field<F>(w.square_sums), rng);
  c.variance = commit_rescale<G>(pp, w.variance, rng);
  c.inverse_std = commit_hiding<G>(pp, to_field<F>(w.inverse_std), rng);
  c.output = commit_rescale<G>(pp, w.output, rng);
  return c;
}

template <GroupBackend G>
struct LayerNormProof {
  using Scalar = typename G::Scalar;

  Commitment<G> row_sum_com;
  Commitment<G> square_sum_com;
  RescaleProof<G> variance;  // mapped_com holds the inverse std commitment
  EvalProof<G> square_sum_eval;
  RescaleProof<G> output;
  EvalProof<G> bias_eval;
  SumcheckProof<Scalar> output_product;
  EvalProof<G> output_x_eval;
  BatchEvalProof<G> output_row_evals;  // row sums, inverse std
  EvalProof<G> gain_eval;
  BatchEvalProof<G> stats_claim_evals;  // row sums, square sums
  SumcheckProof<Scalar> stats;
  EvalProof<G> stats_x_eval;
  EvalProof<G> stats_row_sum_eval;

  const Commitment<G>& output_com() const { return output.quotient_com; }

  void write(ByteWriter& w) const {
    row_sum_com.write(w);
    square_sum_com.write(w);
    variance.write(w);
    square_sum_eval.write(w);
    output.write(w);
    bias_eval.write(w);
    output_product.write(w);
    output_x_eval.write(w);
    output_row_evals.write(w);
    gain_eval.write(w);
    stats_claim_evals.write(w);
    stats.write(w);
    stats_x_eval.write(w);
    stats_row_sum_eval.write(w);
  }
  static LayerNormProof read(ByteReader& r) {
    LayerNormProof p;
    p.row_sum_com = Commitment<G>::read(r);
    p.square_sum_com = Commitment<G>::read(r);
    p.variance = RescaleProof<G>::read(r);
    p.square_sum_eval = EvalProof<G>::read(r);
    p.output = RescaleProof<G>::read(r);
    p.bias_eval = EvalProof<G>::read(r);
    p.output_product = SumcheckProof<Scalar>::read(r);
    p.output_x_eval = EvalProof<G>::read(r);
    p.output_row_evals = BatchEvalProof<G>::read(r);
    p.gain_eval = EvalProof<G>::read(r);
    p.stats_claim_evals = BatchEvalProof<G>::read(r);
    p.stats = SumcheckProof<Scalar>::read(r);
    p.stats_x_eval = EvalProof<G>::read(r);
    p.stats_row_sum_eval = EvalProof<G>::read(r);
    return p;
  }
};

namespace detail {

// Tables: eq, X, S broadcast, R broadcast, g broadcast.
template <class F>
SumOfProducts<F> layernorm_output_shape(std::size_t n) {
  SumOfProducts<F> s;
  s.num_tables = 5;
  s.terms.push_back({F::from_u64(n), {0, 1, 3, 4}});
  s.terms.push_back({-F::one(), {0, 2, 3, 4}});
  return s;
}

// Tables: row eq broadcast, X, S broadcast.
template <class F>
SumOfProducts<F> layernorm_stats_shape(std::size_t n, const F& rho) {
  SumOfProducts<F> s;
  s.num_tables = 3;
  const F nf = F::from_u64(n);
  s.terms.push_back({rho, {0, 1}});
  s.terms.push_back({nf * nf, {0, 1, 1}});
  s.terms.push_back({-(nf + nf), {0, 1, 2}});
  s.terms.push_back({F::one(), {0, 2, 2}});
  return s;
}

template <class F>
std::vector<F> broadcast_cols(const std::vector<F>& per_col, std::size_t rows) {
  std::vector<F> out;
  out.reserve(per_col.size() * rows);
  for (std::size_t i = 0; i < rows; ++i) out.insert(out.end(), per_col.begin(), per_col.end());
  return out;
}

}  // namespace detail

template <GroupBackend G>
LayerNormProof<G> layernorm_prove(const PublicParams<G>& pp, const LayerNormConfig& cfg,
                                  const LayerNormTables<G>& tables, const Committed<G>& x, const Committed<G>& gain,
                                  const Committed<G>& bias, const LayerNormCommitted<G>& c, Transcript& tr,
                                  Rng& rng) {
  using F = typename G::Scalar;
  const std::size_t cols = cfg.row_len, rows = x.data.size() / cols;
  const unsigned log_rows = log2_exact(rows), log_cols = log2_exact(cols);
  LayerNormProof<G> proof;
  proof.row_sum_com = c.row_sums.com;
  proof.square_sum_com = c.square_sums.com;
  c.row_sums.com.absorb_into(tr, "ln.row_sums");
  c.square_sums.com.absorb_into(tr, "ln.square_sums");

  {
    auto [vp, claim] = rescale_prove<G>(pp, cfg.variance_rescale(), tables.variance, c.variance, &c.inverse_std,
                                        QuotientMap<G>{&tables.variance_domain, &tables.inverse_std}, tr, rng);
    proof.variance = std::move(vp);
    proof.square_sum_eval = prove_eval<G>(pp, c.square_sums, claim.point, tr, rng);
  }

  auto s_ext = detail::broadcast_rows(c.row_sums.data, cols);
  {
    auto [op, claim] = rescale_prove<G>(pp, cfg.output_rescale(), tables.output, c.output, nullptr, {}, tr, rng);
    proof.output = std::move(op);
    std::span<const F> r(claim.point);
    proof.bias_eval = prove_eval<G>(pp, bias, r.subspan(log_rows), tr, rng);
    Combination<F> comb(log_rows + log_cols);
    comb.add_table(eq_table<F>(r));
    comb.add_table(x.data);
    comb.add_table(s_ext);
    comb.add_table(detail::broadcast_rows(c.inverse_std.data, cols));
    comb.add_table(detail::broadcast_cols(gain.data, rows));
    for (const auto& t : detail::layernorm_output_shape<F>(cols).terms) comb.add_term(t.coeff, t.factors);
    auto [sc, sc_claims] = prove_sumcheck(std::move(comb), tr);
    proof.output_product = std::move(sc);
    std::span<const F> w(sc_claims.point);
    proof.output_x_eval = prove_eval<G>(pp, x, w, tr, rng);
    proof.output_row_evals = prove_eval_batch<G>(pp, {&c.row_sums, &c.inverse_std}, w.subspan(0, log_rows), tr, rng);
    proof.gain_eval = prove_eval<G>(pp, gain, w.subspan(log_rows), tr, rng);
  }

  {
    std::vector<F> u = tr.challenges<F>("ln.u", log_rows);
    F rho = tr.challenge<F>("ln.rho");
    proof.stats_claim_evals = prove_eval_batch<G>(pp, {&c.row_sums, &c.square_sums}, u, tr, rng);
    Combination<F> comb(log_rows + log_cols);
    comb.add_table(detail::broadcast_rows(eq_table<F>(u), cols));
    comb.add_table(x.data);
    comb.add_table(std::move(s_ext));
    for (const auto& t : detail::layernorm_stats_shape<F>(cols, rho).terms) comb.add_term(t.coeff, t.factors);
    auto [sc, sc_claims] = prove_sumcheck(std::move(comb), tr);
    proof.stats = std::move(sc);
    std::span<const F> w(sc_claims.point);
    proof.stats_x_eval = prove_eval<G>(pp, x, w, tr, rng);
    proof.stats_row_sum_eval = prove_eval<G>(pp, c.row_sums, w.subspan(0, log_rows), tr, rng);
  }
  return proof;
}

template <GroupBackend G>
bool layernorm_verify(const PublicParams<G>& pp, const LayerNormConfig& cfg, const LayerNormTables<G>& tables,
                      const Commitment<G>& x, const Commitment<G>& gain, const Commitment<G>& bias,
                      const LayerNormProof<G>& proof, Transcript& tr) {
  using F = typename G::Scalar;
  if (!is_pow2(cfg.row_len)) return false;
  const unsigned log_cols = log2_exact(cfg.row_len);
  if (x.log_size < log_cols || gain.log_size != log_cols || bias.log_size != log_cols) return false;
  const unsigned log_rows = x.log_size - log_cols;
  if (proof.row_sum_com.log_size != log_rows || proof.square_sum_com.log_size != log_rows) return false;
  const F nf = F::from_u64(cfg.row_len);
  proof.row_sum_com.absorb_into(tr, "ln.row_sums");
  proof.square_sum_com.absorb_into(tr, "ln.square_sums");

  auto var_claim = rescale_verify<G>(pp, cfg.variance_rescale(), tables.variance, log_rows,
                                     QuotientMap<G>{&tables.variance_domain, &tables.inverse_std}, proof.variance, tr);
  if (!var_claim || proof.square_sum_eval.value != var_claim->value) return false;
  if (!verify_eval<G>(pp, proof.square_sum_com, var_claim->point, proof.square_sum_eval, tr)) return false;
  const Commitment<G>& inv_com = *proof.variance.mapped_com;

  {
    auto claim = rescale_verify<G>(pp, cfg.output_rescale(), tables.output, x.log_size, {}, proof.output, tr);
    if (!claim) return false;
    std::span<const F> r(claim->point);
    if (!verify_eval<G>(pp, bias, r.subspan(log_rows), proof.bias_eval, tr)) return false;
    const F nscale = nf * F::from_i64(cfg.gamma) * F::from_i64(cfg.gamma);
    auto sc = verify_sumcheck(detail::layernorm_output_shape<F>(cfg.row_len), x.log_size,
                              claim->value - nscale * proof.bias_eval.value, proof.output_product, tr);
    if (!sc) return false;
    std::span<const F> w(sc->point);
    const auto& v = sc->values;
    if (v[0] != eq_eval<F>(r, w)) return false;
    if (proof.output_x_eval.value != v[1]) return false;
    if (!verify_eval<G>(pp, x, w, proof.output_x_eval, tr)) return false;
    if (proof.output_row_evals.values != std::vector<F>{v[2], v[3]}) return false;
    if (!verify_eval_batch<G>(pp, {&proof.row_sum_com, &inv_com}, w.subspan(0, log_rows), proof.output_row_evals,
                              tr)) {
      return false;
    }
    if (proof.gain_eval.value != v[4]) return false;
    if (!verify_eval<G>(pp, gain, w.subspan(log_rows), proof.gain_eval, tr)) return false;
  }

  {
    std::vector<F> u = tr.challenges<F>("ln.u", log_rows);
    F rho = tr.challenge<F>("ln.rho");
    if (proof.stats_claim_evals.values.size() != 2) return false;
    if (!verify_eval_batch<G>(pp, {&proof.row_sum_com, &proof.square_sum_com}, u, proof.stats_claim_evals, tr)) {
      return false;
    }
    F claim = rho * proof.stats_claim_evals.values[0] + proof.stats_claim_evals.values[1];
    auto sc = verify_sumcheck(detail::layernorm_stats_shape<F>(cfg.row_len, rho), x.log_size, claim, proof.stats, tr);
    if (!sc) return false;
    std::span<const F> w(sc->point);
    const auto& v = sc->values;
    if (v[0] != eq_eval<F>(u, w.subspan(0, log_rows))) return false;
    if (proof.stats_x_eval.value != v[1]) return false;
    if (!verify_eval<G>(pp, x, w, proof.stats_x_eval, tr)) return false;
    if (proof.stats_row_sum_eval.value != v[2]) return false;
    if (!verify_eval<G>(pp, proof.row_sum_com, w.subspan(0, log_rows), proof.stats_row_sum_eval, tr)) return false;
  }
  return true;
}

}  // namespace zkt
