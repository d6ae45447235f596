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
#include <span>
#include <unordered_map>
#include <vector>

#include "zkt/algebra/batch_inverse.hpp"
#include "zkt/polycommit/hyrax.hpp"
#include "zkt/sumcheck/sumcheck.hpp"

namespace zkt {

// Public table with a zero-blinding commitment. Tables whose natural size
// is not a power of two are padded by repeating the last entry.
template <GroupBackend G>
struct LookupTable {
  using Scalar = typename G::Scalar;

  std::vector<Scalar> entries;
  Committed<G> committed;

  std::size_t size() const { return entries.size(); }
  unsigned log_size() const { return committed.log_size(); }
  const Commitment<G>& com() const { return committed.com; }
};

template <class F>
std::vector<F> pad_table(std::vector<F> entries) {
  if (entries.empty()) throw ShapeError("empty lookup table");
  std::size_t n = next_pow2(entries.size());
  F last = entries.back();
  entries.resize(n, last);
  return entries;
}

template <GroupBackend G>
LookupTable<G> tlookup_setup(const PublicParams<G>& pp, std::vector<typename G::Scalar> entries) {
  LookupTable<G> t;
  t.entries = pad_table(std::move(entries));
  t.committed = commit_public<G>(pp, t.entries);
  return t;
}

template <GroupBackend G>
LookupTable<G> tlookup_setup_range(const PublicParams<G>& pp, std::int64_t lo, std::int64_t hi_exclusive) {
  using Scalar = typename G::Scalar;
  std::vector<Scalar> e;
  for (std::int64_t v = lo; v < hi_exclusive; ++v) e.push_back(Scalar::from_i64(v));
  return tlookup_setup<G>(pp, std::move(e));
}

// T_X + alpha T_Y, entries and commitment alike.
template <GroupBackend G>
LookupTable<G> combine_tables(const LookupTable<G>& x, const typename G::Scalar& alpha, const LookupTable<G>& y) {
  LookupTable<G> t;
  t.committed = combine(x.committed, alpha, y.committed);
  t.entries = t.committed.data;
  return t;
}

// Lookup input length once padded up to the table size.
inline std::size_t lookup_domain(std::size_t input_size, std::size_t table_size) {
  return std::max(next_pow2(input_size), table_size);
}

namespace detail {

template <class F>
std::vector<F> count_multiplicities(std::span<const F> inputs, std::span<const F> table, bool strict) {
  std::unordered_map<F, std::size_t, typename F::Hash> index;
  index.reserve(table.size() * 2);
  for (std::size_t i = table.size(); i-- > 0;) index[table[i]] = i;
  std::vector<std::uint64_t> counts(table.size(), 0);
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    auto it = index.find(inputs[j]);
    if (it == index.end()) {
      if (strict) throw NotInTable(j);
      continue;
    }
    ++counts[it->second];
  }
  std::size_t domain = lookup_domain(inputs.size(), table.size());
  counts[0] += domain - inputs.size();
  std::vector<F> m(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) m[i] = F::from_u64(counts[i]);
  return m;
}

}  // namespace detail

// m_i = number of inputs equal to table entry i (first occurrence for
// duplicated entries). Inputs shorter than the table count the T_0 padding.
template <class F>
std::vector<F> compute_multiplicities(std::span<const F> inputs, std::span<const F> table) {
  return detail::count_multiplicities(inputs, table, true);
}

// Skips inputs missing from the table. Used inside composite protocols so
// that a bad witness still yields a (rejected) proof.
template <class F>
std::vector<F> compute_multiplicities_lenient(std::span<const F> inputs, std::span<const F> table) {
  return detail::count_multiplicities(inputs, table, false);
}

// Everything in a lookup proof except the opening of the input, which the
// caller discharges from the returned claim.
template <GroupBackend G>
struct LookupArgument {
  using Scalar = typename G::Scalar;

  Commitment<G> m_com;
  std::uint32_t attempts = 0;  // beta re-derivations after a collision
  Commitment<G> a_com;
  Commitment<G> b_com;
  SumcheckProof<Scalar> sumcheck;
  EvalProof<G> a_eval, b_eval, m_eval, t_eval;

  void write(ByteWriter& w) const {
    a_com.write(w);
    b_com.write(w);
    m_com.write(w);
    w.u32(attempts);
    sumcheck.write(w);
    for (const auto* e : {&a_eval, &b_eval, &m_eval, &t_eval}) e->write(w);
  }
  static LookupArgument read(ByteReader& r) {
    LookupArgument p;
    p.a_com = Commitment<G>::read(r);
    p.b_com = Commitment<G>::read(r);
    p.m_com = Commitment<G>::read(r);
    p.attempts = r.u32();
    p.sumcheck = SumcheckProof<Scalar>::read(r);
    for (auto* e : {&p.a_eval, &p.b_eval, &p.m_eval, &p.t_eval}) *e = EvalProof<G>::read(r);
    return p;
  }
};

template <GroupBackend G>
struct TlookupProof : LookupArgument<G> {
  using Scalar = typename G::Scalar;

  EvalProof<G> s_eval;

  void write(ByteWriter& w) const {
    this->a_com.write(w);
    this->b_com.write(w);
    this->m_com.write(w);
    w.u32(this->attempts);
    this->sumcheck.write(w);
    for (const auto* e : {&this->a_eval, &this->b_eval, &s_eval, &this->m_eval, &this->t_eval}) e->write(w);
  }
  static TlookupProof read(ByteReader& r) {
    TlookupProof p;
    p.a_com = Commitment<G>::read(r);
    p.b_com = Commitment<G>::read(r);
    p.m_com = Commitment<G>::read(r);
    p.attempts = r.u32();
    p.sumcheck = SumcheckProof<Scalar>::read(r);
    for (auto* e : {&p.a_eval, &p.b_eval, &p.s_eval, &p.m_eval, &p.t_eval}) *e = EvalProof<G>::read(r);
    return p;
  }
};

inline constexpr std::uint32_t kMaxBetaAttempts = 8;

namespace detail {

// Table order inside the combined sumcheck.
enum TlookupTables : std::size_t { kA, kEqIn, kS, kB, kEqTab, kT, kM, kNumTlookupTables };

template <class F>
SumOfProducts<F> tlookup_shape(const F& alpha, const F& beta, const F& table_weight) {
  SumOfProducts<F> s;
  s.num_tables = kNumTlookupTables;
  F a2 = alpha * alpha;
  s.terms = {
      {alpha, {kA, kEqIn, kS}},
      {alpha * beta, {kA, kEqIn}},
      {F::one(), {kA}},
      {table_weight * a2, {kB, kEqTab, kT}},
      {table_weight * a2 * beta, {kB, kEqTab}},
      {-table_weight, {kB, kM}},
  };
  return s;
}

template <class F>
std::vector<F> repeat_to(std::span<const F> v, std::size_t n) {
  std::vector<F> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = v[i % v.size()];
  return out;
}

}  // namespace detail

namespace detail {

// Runs the lookup argument for an uncommitted input vector and returns the
// claim on its MLE that the caller still has to open.
template <GroupBackend G>
EvalClaim<typename G::Scalar> lookup_argument_prove(const PublicParams<G>& pp, std::span<const typename G::Scalar> input,
                                                    std::vector<typename G::Scalar> m, const LookupTable<G>& table,
                                                    LookupArgument<G>& proof, Transcript& tr, Rng& rng) {
  using F = typename G::Scalar;
  const std::size_t n = table.size();
  const std::size_t d = input.size();
  if (!is_pow2(d)) throw ShapeError("lookup input size must be a power of two");
  const std::size_t domain = lookup_domain(d, n);
  const unsigned log_domain = log2_exact(domain);
  const unsigned log_table = table.log_size();
  const unsigned log_input = log2_exact(d);
  if (m.size() != n) throw ShapeError("multiplicity vector must match table size");

  Committed<G> m_c = commit_hiding<G>(pp, std::move(m), rng);
  proof.m_com = m_c.com;
  m_c.com.absorb_into(tr, "tlookup.m");

  std::vector<F> s_pad(input.begin(), input.end());
  s_pad.resize(domain, table.entries[0]);

  F beta;
  std::vector<F> a, b;
  for (std::uint32_t attempt = 0;; ++attempt) {
    if (attempt >= kMaxBetaAttempts) throw ChallengeCollision("beta collided on every attempt");
    tr.absorb_u64("tlookup.attempt", attempt);
    beta = tr.challenge<F>("tlookup.beta");
    a.resize(domain);
    b.resize(n);
    for (std::size_t i = 0; i < domain; ++i) a[i] = s_pad[i] + beta;
    for (std::size_t i = 0; i < n; ++i) b[i] = table.entries[i] + beta;
    try {
      a = batch_inverse<F>(a);
      b = batch_inverse<F>(b);
    } catch (const DivisionByZero&) {
      continue;
    }
    proof.attempts = attempt;
    break;
  }

  Committed<G> a_c = commit_hiding<G>(pp, std::move(a), rng);
  Committed<G> b_c = commit_hiding<G>(pp, std::move(b), rng);
  proof.a_com = a_c.com;
  proof.b_com = b_c.com;
  a_c.com.absorb_into(tr, "tlookup.A");
  b_c.com.absorb_into(tr, "tlookup.B");
  std::vector<F> u = tr.challenges<F>("tlookup.u", log_domain);
  F alpha = tr.challenge<F>("tlookup.alpha");
  std::span<const F> u_low = std::span<const F>(u).subspan(log_domain - log_table);

  F table_weight = F::from_u64(n) * F::from_u64(domain).inverse();
  Combination<F> comb(log_domain);
  comb.add_table(a_c.data);
  comb.add_table(eq_table<F>(u));
  comb.add_table(s_pad);
  comb.add_table(repeat_to<F>(b_c.data, domain));
  comb.add_table(repeat_to<F>(eq_table<F>(u_low), domain));
  comb.add_table(repeat_to<F>(table.entries, domain));
  comb.add_table(repeat_to<F>(m_c.data, domain));
  auto shape = tlookup_shape(alpha, beta, table_weight);
  for (const auto& t : shape.terms) comb.add_term(t.coeff, t.factors);
  auto [sc, claims] = prove_sumcheck(std::move(comb), tr);
  proof.sumcheck = std::move(sc);

  std::span<const F> w(claims.point);
  std::span<const F> w_low = w.subspan(log_domain - log_table);
  std::span<const F> w_input = w.subspan(log_domain - log_input);
  proof.a_eval = prove_eval<G>(pp, a_c, w, tr, rng);
  proof.b_eval = prove_eval<G>(pp, b_c, w_low, tr, rng);
  proof.m_eval = prove_eval<G>(pp, m_c, w_low, tr, rng);
  proof.t_eval = prove_eval<G>(pp, table.committed, w_low, tr, rng);
  std::vector<F> point(w_input.begin(), w_input.end());
  F value = mle_evaluate<F>(input, point);
  return EvalClaim<F>{std::move(point), value};
}

// On success returns the claim on the input MLE implied by the argument.
template <GroupBackend G>
std::optional<EvalClaim<typename G::Scalar>> lookup_argument_verify(const PublicParams<G>& pp, unsigned log_input,
                                                                    const LookupTable<G>& table,
                                                                    const LookupArgument<G>& proof, Transcript& tr) {
  using F = typename G::Scalar;
  const std::size_t n = table.size();
  const std::size_t domain = lookup_domain(std::size_t{1} << log_input, n);
  const unsigned log_domain = log2_exact(domain);
  const unsigned log_table = table.log_size();
  if (proof.m_com.log_size != log_table || proof.b_com.log_size != log_table ||
      proof.a_com.log_size != log_domain) {
    return std::nullopt;
  }
  if (proof.attempts >= kMaxBetaAttempts) return std::nullopt;

  proof.m_com.absorb_into(tr, "tlookup.m");
  F beta;
  for (std::uint32_t attempt = 0; attempt <= proof.attempts; ++attempt) {
    tr.absorb_u64("tlookup.attempt", attempt);
    beta = tr.challenge<F>("tlookup.beta");
  }
  proof.a_com.absorb_into(tr, "tlookup.A");
  proof.b_com.absorb_into(tr, "tlookup.B");
  std::vector<F> u = tr.challenges<F>("tlookup.u", log_domain);
  F alpha = tr.challenge<F>("tlookup.alpha");
  std::span<const F> u_low = std::span<const F>(u).subspan(log_domain - log_table);

  F table_weight = F::from_u64(n) * F::from_u64(domain).inverse();
  auto shape = tlookup_shape(alpha, beta, table_weight);
  auto claims = verify_sumcheck(shape, log_domain, alpha + alpha * alpha, proof.sumcheck, tr);
  if (!claims) return std::nullopt;
  const auto& v = claims->values;
  std::span<const F> w(claims->point);
  std::span<const F> w_low = w.subspan(log_domain - log_table);
  std::span<const F> w_input = w.subspan(log_domain - log_input);

  if (v[kEqIn] != eq_eval<F>(u, w)) return std::nullopt;
  if (v[kEqTab] != eq_eval<F>(u_low, w_low)) return std::nullopt;
  if (proof.a_eval.value != v[kA] || proof.b_eval.value != v[kB] || proof.m_eval.value != v[kM] ||
      proof.t_eval.value != v[kT]) {
    return std::nullopt;
  }
  if (!verify_eval<G>(pp, proof.a_com, w, proof.a_eval, tr) ||
      !verify_eval<G>(pp, proof.b_com, w_low, proof.b_eval, tr) ||
      !verify_eval<G>(pp, proof.m_com, w_low, proof.m_eval, tr) ||
      !verify_eval<G>(pp, table.com(), w_low, proof.t_eval, tr)) {
    return std::nullopt;
  }
  // Undo the T_0 padding: v[kS] = z S~(w_input) + (1 - z) T_0 with z the
  // indicator of the all-zero high block.
  F zero_block = F::one();
  for (std::size_t k = 0; k < log_domain - log_input; ++k) zero_block *= F::one() - w[k];
  if (zero_block == F::zero()) return std::nullopt;
  F value = (v[kS] - (F::one() - zero_block) * table.entries[0]) * zero_block.inverse();
  return EvalClaim<F>{std::vector<F>(w_input.begin(), w_input.end()), value};
}

}  // namespace detail

// Proves every entry of the committed input lies in the table. The caller
// has already absorbed the input commitment. m is taken as given so that
// a dishonest prover can be simulated.
template <GroupBackend G>
TlookupProof<G> tlookup_prove(const PublicParams<G>& pp, const Committed<G>& input, std::vector<typename G::Scalar> m,
                              const LookupTable<G>& table, Transcript& tr, Rng& rng) {
  TlookupProof<G> proof;
  auto claim = detail::lookup_argument_prove<G>(pp, input.data, std::move(m), table, proof, tr, rng);
  proof.s_eval = prove_eval<G>(pp, input, claim.point, tr, rng);
  return proof;
}

template <GroupBackend G>
bool tlookup_verify(const PublicParams<G>& pp, const Commitment<G>& input, const LookupTable<G>& table,
                    const TlookupProof<G>& proof, Transcript& tr) {
  auto claim = detail::lookup_argument_verify<G>(pp, input.log_size, table, proof, tr);
  if (!claim || proof.s_eval.value != claim->value) return false;
  return verify_eval<G>(pp, input, claim->point, proof.s_eval, tr);
}

// Y = f(X) elementwise against a tabulated f: reduces to one lookup of
// X + alpha Y into T_X + alpha T_Y. The caller has absorbed [X] and [Y].
template <GroupBackend G>
TlookupProof<G> function_lookup_prove(const PublicParams<G>& pp, const Committed<G>& x, const Committed<G>& y,
                                      const LookupTable<G>& table_x, const LookupTable<G>& table_y,
                                      Transcript& tr, Rng& rng) {
  using F = typename G::Scalar;
  F alpha = tr.challenge<F>("lookup.fn.alpha");
  Committed<G> s = combine(x, alpha, y);
  LookupTable<G> t = combine_tables(table_x, alpha, table_y);
  std::vector<F> m = compute_multiplicities_lenient<F>(s.data, t.entries);
  return tlookup_prove<G>(pp, s, std::move(m), t, tr, rng);
}

template <GroupBackend G>
bool function_lookup_verify(const PublicParams<G>& pp, const Commitment<G>& x, const Commitment<G>& y,
                            const LookupTable<G>& table_x, const LookupTable<G>& table_y,
                            const TlookupProof<G>& proof, Transcript& tr) {
  using F = typename G::Scalar;
  F alpha = tr.challenge<F>("lookup.fn.alpha");
  if (x.log_size != y.log_size || table_x.size() != table_y.size()) return false;
  Commitment<G> s = combine(x, alpha, y);
  LookupTable<G> t = combine_tables(table_x, alpha, table_y);
  return tlookup_verify<G>(pp, s, t, proof, tr);
}

// Column c of a stacked lookup input: entries of sources[source] plus a
// public offset.
template <class F>
struct LookupColumn {
  std::size_t source = 0;
  F offset{};
};

// One lookup for several same-sized committed vectors, each possibly
// shifted. The input openings collapse into a single batched opening.
template <GroupBackend G>
struct ColumnLookupProof {
  LookupArgument<G> lookup;
  BatchEvalProof<G> sources;

  void write(ByteWriter& w) const {
    lookup.write(w);
    sources.write(w);
  }
  static ColumnLookupProof read(ByteReader& r) {
    ColumnLookupProof p;
    p.lookup = LookupArgument<G>::read(r);
    p.sources = BatchEvalProof<G>::read(r);
    return p;
  }
};

namespace detail {

// MLE of the stacked input at (column bits || x) given each source at x.
template <class F>
F stacked_value(std::span<const F> column_point, const std::vector<LookupColumn<F>>& columns,
                const std::vector<F>& source_values, const F& pad) {
  const auto eq = eq_table<F>(column_point);
  F out = F::zero();
  for (std::size_t c = 0; c < eq.size(); ++c) {
    out += eq[c] * (c < columns.size() ? source_values[columns[c].source] + columns[c].offset : pad);
  }
  return out;
}

}  // namespace detail

// The caller has absorbed every source commitment.
template <GroupBackend G>
ColumnLookupProof<G> column_lookup_prove(const PublicParams<G>& pp, const std::vector<const Committed<G>*>& sources,
                                         const std::vector<LookupColumn<typename G::Scalar>>& columns,
                                         const LookupTable<G>& table, Transcript& tr, Rng& rng) {
  using F = typename G::Scalar;
  if (sources.empty() || columns.empty()) throw ShapeError("column lookup needs sources and columns");
  const std::size_t n = sources[0]->data.size();
  for (const auto* s : sources) {
    if (s->data.size() != n) throw ShapeError("column lookup sources differ in size");
  }
  const std::size_t k = next_pow2(columns.size());
  const unsigned log_k = log2_exact(k);
  std::vector<F> stacked(k * n, table.entries[0]);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const auto& src = sources.at(columns[c].source)->data;
    for (std::size_t i = 0; i < n; ++i) stacked[c * n + i] = src[i] + columns[c].offset;
  }
  auto m = compute_multiplicities_lenient<F>(stacked, table.entries);
  ColumnLookupProof<G> proof;
  auto claim = detail::lookup_argument_prove<G>(pp, stacked, std::move(m), table, proof.lookup, tr, rng);
  std::span<const F> x = std::span<const F>(claim.point).subspan(log_k);
  proof.sources = prove_eval_batch<G>(pp, sources, x, tr, rng);
  return proof;
}

template <GroupBackend G>
bool column_lookup_verify(const PublicParams<G>& pp, const std::vector<const Commitment<G>*>& sources,
                          const std::vector<LookupColumn<typename G::Scalar>>& columns, const LookupTable<G>& table,
                          const ColumnLookupProof<G>& proof, Transcript& tr) {
  using F = typename G::Scalar;
  if (sources.empty() || columns.empty()) return false;
  const unsigned log_n = sources[0]->log_size;
  for (const auto* s : sources) {
    if (s->log_size != log_n) return false;
  }
  for (const auto& c : columns) {
    if (c.source >= sources.size()) return false;
  }
  const unsigned log_k = log2_exact(next_pow2(columns.size()));
  auto claim = detail::lookup_argument_verify<G>(pp, log_k + log_n, table, proof.lookup, tr);
  if (!claim || proof.sources.values.size() != sources.size()) return false;
  std::span<const F> point(claim->point);
  if (detail::stacked_value<F>(point.subspan(0, log_k), columns, proof.sources.values, table.entries[0]) !=
      claim->value) {
    return false;
  }
  return verify_eval_batch<G>(pp, sources, point.subspan(log_k), proof.sources, tr);
}

}  // namespace zkt
