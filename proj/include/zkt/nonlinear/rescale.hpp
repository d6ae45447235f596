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

#include <cstdint>
#include <optional>
#include <vector>

#include "zkt/tlookup/tlookup.hpp"
#include "zkt/zkattn/zkattn.hpp"

namespace zkt {

// Division by a power-of-two divisor with rounding half up, so that the
// remainder lands in [-divisor/2, divisor/2). The quotient must lie in
// [-quotient_range/2, quotient_range/2).
struct RescaleConfig {
  std::int64_t divisor = 1 << 8;
  std::int64_t quotient_range = 1 << 12;
  std::int64_t digit_budget = 1 << 8;
};

std::int64_t div_round(std::int64_t x, std::int64_t divisor);

// Radices of the shifted remainder R + divisor/2, least significant first.
std::vector<std::int64_t> remainder_radices(const RescaleConfig& c);

// Radices of the offset quotient q + quotient_range/2.
std::vector<std::int64_t> quotient_radices(const RescaleConfig& c);

struct RescaleWitness {
  std::vector<std::int64_t> quotient;
  std::vector<std::vector<std::int64_t>> digits;
  std::vector<std::vector<std::int64_t>> quotient_digits;
};

// Throws RangeError when a quotient falls outside its range.
RescaleWitness rescale_compute(const std::vector<std::int64_t>& values, const RescaleConfig& c);

// All digits, remainder and quotient alike, are looked up in [0, budget).
template <GroupBackend G>
struct RescaleTables {
  LookupTable<G> digits;
};

template <GroupBackend G>
RescaleTables<G> build_rescale_tables(const PublicParams<G>& pp, const RescaleConfig& c) {
  remainder_radices(c);
  quotient_radices(c);
  return RescaleTables<G>{tlookup_setup_range<G>(pp, 0, c.digit_budget)};
}

template <GroupBackend G>
struct RescaleCommitted {
  Committed<G> quotient;
  std::vector<Committed<G>> digits;
  std::vector<Committed<G>> quotient_digits;
};

template <GroupBackend G>
RescaleCommitted<G> commit_rescale(const PublicParams<G>& pp, const RescaleWitness& w, Rng& rng) {
  using F = typename G::Scalar;
  RescaleCommitted<G> c;
  c.quotient = commit_hiding<G>(pp, to_field<F>(w.quotient), rng);
  for (const auto& d : w.digits) c.digits.push_back(commit_hiding<G>(pp, to_field<F>(d), rng));
  for (const auto& d : w.quotient_digits) c.quotient_digits.push_back(commit_hiding<G>(pp, to_field<F>(d), rng));
  return c;
}

// Optional elementwise function of the quotient, proved by a paired lookup
// (ReLU, inverse square root).
template <GroupBackend G>
struct QuotientMap {
  const LookupTable<G>* inputs = nullptr;
  const LookupTable<G>* outputs = nullptr;
};

template <GroupBackend G>
struct RescaleProof {
  Commitment<G> quotient_com;
  std::vector<Commitment<G>> digit_coms;
  std::vector<Commitment<G>> quotient_digit_coms;
  std::optional<Commitment<G>> mapped_com;
  ColumnLookupProof<G> digit_lookup;
  std::optional<TlookupProof<G>> map_lookup;
  BatchEvalProof<G> evals;  // quotient, remainder digits, quotient digits

  void write(ByteWriter& w) const {
    quotient_com.write(w);
    w.u32(static_cast<std::uint32_t>(digit_coms.size()));
    for (const auto& c : digit_coms) c.write(w);
    w.u32(static_cast<std::uint32_t>(quotient_digit_coms.size()));
    for (const auto& c : quotient_digit_coms) c.write(w);
    w.u8(mapped_com ? 1 : 0);
    if (mapped_com) mapped_com->write(w);
    digit_lookup.write(w);
    if (map_lookup) map_lookup->write(w);
    evals.write(w);
  }
  static RescaleProof read(ByteReader& r) {
    RescaleProof p;
    p.quotient_com = Commitment<G>::read(r);
    for (auto* list : {&p.digit_coms, &p.quotient_digit_coms}) {
      std::uint32_t n = r.u32();
      if (n > 16) throw DecodeError("too many rescale digits");
      for (std::uint32_t i = 0; i < n; ++i) list->push_back(Commitment<G>::read(r));
    }
    std::uint8_t flag = r.u8();
    if (flag > 1) throw DecodeError("bad flag");
    if (flag) p.mapped_com = Commitment<G>::read(r);
    p.digit_lookup = ColumnLookupProof<G>::read(r);
    if (flag) p.map_lookup = TlookupProof<G>::read(r);
    p.evals = BatchEvalProof<G>::read(r);
    return p;
  }
};

namespace detail {

template <class F>
F digit_weight(const std::vector<std::int64_t>& radices, std::size_t i) {
  std::int64_t w = 1;
  for (std::size_t j = 0; j < i; ++j) w *= radices[j];
  return F::from_i64(w);
}

// Sources are the remainder digits followed by the quotient digits. A
// digit with radix below the budget gets a second, shifted column so that
// both d and d + budget - radix land in [0, budget).
template <class F>
std::vector<LookupColumn<F>> digit_columns(const RescaleConfig& c) {
  std::vector<std::int64_t> radices = remainder_radices(c);
  for (auto r : quotient_radices(c)) radices.push_back(r);
  std::vector<LookupColumn<F>> cols;
  for (std::size_t i = 0; i < radices.size(); ++i) cols.push_back({i, F::zero()});
  for (std::size_t i = 0; i < radices.size(); ++i) {
    if (radices[i] < c.digit_budget) cols.push_back({i, F::from_i64(c.digit_budget - radices[i])});
  }
  return cols;
}

// Checks q~ against its digits and returns the implied P~ at the same point.
template <class F>
std::optional<F> rescale_claim(const RescaleConfig& c, const std::vector<F>& values) {
  const auto rem = remainder_radices(c);
  const auto quo = quotient_radices(c);
  if (values.size() != 1 + rem.size() + quo.size()) return std::nullopt;
  F offset_q = F::from_i64(c.quotient_range / 2);
  F recomposed = F::zero();
  for (std::size_t i = 0; i < quo.size(); ++i) recomposed += digit_weight<F>(quo, i) * values[1 + rem.size() + i];
  if (values[0] + offset_q != recomposed) return std::nullopt;
  F value = F::from_i64(c.divisor) * values[0] - F::from_i64(c.divisor / 2);
  for (std::size_t i = 0; i < rem.size(); ++i) value += digit_weight<F>(rem, i) * values[1 + i];
  return value;
}

}  // namespace detail

// Proves that the committed quotient and remainder digits decompose some
// tensor P and returns the implied claim on P at a transcript point.
template <GroupBackend G>
std::pair<RescaleProof<G>, EvalClaim<typename G::Scalar>> rescale_prove(
    const PublicParams<G>& pp, const RescaleConfig& cfg, const RescaleTables<G>& tables,
    const RescaleCommitted<G>& c, const Committed<G>* mapped, QuotientMap<G> map, Transcript& tr, Rng& rng) {
  using F = typename G::Scalar;
  RescaleProof<G> proof;
  proof.quotient_com = c.quotient.com;
  for (const auto& d : c.digits) proof.digit_coms.push_back(d.com);
  for (const auto& d : c.quotient_digits) proof.quotient_digit_coms.push_back(d.com);
  if (mapped) proof.mapped_com = mapped->com;

  c.quotient.com.absorb_into(tr, "rescale.quotient");
  for (const auto& d : c.digits) d.com.absorb_into(tr, "rescale.digit");
  for (const auto& d : c.quotient_digits) d.com.absorb_into(tr, "rescale.qdigit");
  if (mapped) mapped->com.absorb_into(tr, "rescale.mapped");

  std::vector<const Committed<G>*> digits;
  for (const auto& d : c.digits) digits.push_back(&d);
  for (const auto& d : c.quotient_digits) digits.push_back(&d);
  proof.digit_lookup = column_lookup_prove<G>(pp, digits, detail::digit_columns<F>(cfg), tables.digits, tr, rng);
  if (mapped) {
    proof.map_lookup = function_lookup_prove<G>(pp, c.quotient, *mapped, *map.inputs, *map.outputs, tr, rng);
  }

  std::vector<F> r = tr.challenges<F>("rescale.r", c.quotient.log_size());
  std::vector<const Committed<G>*> batch{&c.quotient};
  batch.insert(batch.end(), digits.begin(), digits.end());
  proof.evals = prove_eval_batch<G>(pp, batch, r, tr, rng);

  auto value = detail::rescale_claim<F>(cfg, proof.evals.values);
  return {std::move(proof), EvalClaim<F>{std::move(r), value.value_or(F::zero())}};
}

template <GroupBackend G>
std::optional<EvalClaim<typename G::Scalar>> rescale_verify(const PublicParams<G>& pp, const RescaleConfig& cfg,
                                                            const RescaleTables<G>& tables, unsigned log_size,
                                                            QuotientMap<G> map, const RescaleProof<G>& proof,
                                                            Transcript& tr) {
  using F = typename G::Scalar;
  if (proof.digit_coms.size() != remainder_radices(cfg).size() ||
      proof.quotient_digit_coms.size() != quotient_radices(cfg).size()) {
    return std::nullopt;
  }
  if (proof.mapped_com.has_value() != (map.inputs != nullptr) || proof.map_lookup.has_value() != proof.mapped_com.has_value()) {
    return std::nullopt;
  }
  if (proof.quotient_com.log_size != log_size) return std::nullopt;
  if (proof.mapped_com && proof.mapped_com->log_size != log_size) return std::nullopt;

  proof.quotient_com.absorb_into(tr, "rescale.quotient");
  for (const auto& d : proof.digit_coms) d.absorb_into(tr, "rescale.digit");
  for (const auto& d : proof.quotient_digit_coms) d.absorb_into(tr, "rescale.qdigit");
  if (proof.mapped_com) proof.mapped_com->absorb_into(tr, "rescale.mapped");

  std::vector<const Commitment<G>*> digits;
  for (const auto& d : proof.digit_coms) digits.push_back(&d);
  for (const auto& d : proof.quotient_digit_coms) digits.push_back(&d);
  for (const auto* d : digits) {
    if (d->log_size != log_size) return std::nullopt;
  }
  if (!column_lookup_verify<G>(pp, digits, detail::digit_columns<F>(cfg), tables.digits, proof.digit_lookup, tr)) {
    return std::nullopt;
  }
  if (proof.mapped_com && !function_lookup_verify<G>(pp, proof.quotient_com, *proof.mapped_com, *map.inputs,
                                                     *map.outputs, *proof.map_lookup, tr)) {
    return std::nullopt;
  }

  std::vector<F> r = tr.challenges<F>("rescale.r", log_size);
  std::vector<const Commitment<G>*> batch{&proof.quotient_com};
  batch.insert(batch.end(), digits.begin(), digits.end());
  if (!verify_eval_batch<G>(pp, batch, r, proof.evals, tr)) return std::nullopt;
  auto value = detail::rescale_claim<F>(cfg, proof.evals.values);
  if (!value) return std::nullopt;
  return EvalClaim<F>{std::move(r), *value};
}

}  // namespace zkt
