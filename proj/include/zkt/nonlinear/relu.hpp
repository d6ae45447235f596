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

#include <algorithm>

#include "zkt/nonlinear/rescale.hpp"

namespace zkt {

// ReLU fused with the rescale of a gamma^2-scaled product: the quotient and
// its activation are looked up as a pair, the digits in one shared table.
template <GroupBackend G>
struct ReluTables {
  RescaleTables<G> rescale;
  LookupTable<G> domain;
  LookupTable<G> activation;

  // Entries across all tables actually looked up.
  std::size_t footprint() const { return domain.size() + rescale.digits.size(); }
  QuotientMap<G> map() const { return {&domain, &activation}; }
};

template <GroupBackend G>
ReluTables<G> build_relu_tables(const PublicParams<G>& pp, const RescaleConfig& c) {
  using F = typename G::Scalar;
  ReluTables<G> t;
  t.rescale = build_rescale_tables<G>(pp, c);
  t.domain = tlookup_setup_range<G>(pp, -c.quotient_range / 2, c.quotient_range / 2);
  std::vector<F> ys;
  ys.reserve(static_cast<std::size_t>(c.quotient_range));
  for (std::int64_t x = -c.quotient_range / 2; x < c.quotient_range / 2; ++x) ys.push_back(F::from_i64(std::max<std::int64_t>(x, 0)));
  t.activation = tlookup_setup<G>(pp, std::move(ys));
  return t;
}

struct ReluWitness {
  RescaleWitness rescale;
  std::vector<std::int64_t> output;
};

inline ReluWitness relu_compute(const std::vector<std::int64_t>& values, const RescaleConfig& c) {
  ReluWitness w;
  w.rescale = rescale_compute(values, c);
  w.output.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) w.output[i] = std::max<std::int64_t>(w.rescale.quotient[i], 0);
  return w;
}

template <GroupBackend G>
struct ReluCommitted {
  RescaleCommitted<G> rescale;
  Committed<G> output;
};

template <GroupBackend G>
ReluCommitted<G> commit_relu(const PublicParams<G>& pp, const ReluWitness& w, Rng& rng) {
  using F = typename G::Scalar;
  return ReluCommitted<G>{commit_rescale<G>(pp, w.rescale, rng), commit_hiding<G>(pp, to_field<F>(w.output), rng)};
}

// Returns a claim on the gamma^2-scaled input. The output commitment is
// proof.mapped_com.
template <GroupBackend G>
std::pair<RescaleProof<G>, EvalClaim<typename G::Scalar>> relu_prove(const PublicParams<G>& pp,
                                                                     const RescaleConfig& cfg,
                                                                     const ReluTables<G>& tables,
                                                                     const ReluCommitted<G>& c, Transcript& tr,
                                                                     Rng& rng) {
  return rescale_prove<G>(pp, cfg, tables.rescale, c.rescale, &c.output,
                          tables.map(), tr, rng);
}

template <GroupBackend G>
std::optional<EvalClaim<typename G::Scalar>> relu_verify(const PublicParams<G>& pp, const RescaleConfig& cfg,
                                                         const ReluTables<G>& tables, unsigned log_size,
                                                         const RescaleProof<G>& proof, Transcript& tr) {
  return rescale_verify<G>(pp, cfg, tables.rescale, log_size,
                           tables.map(), proof, tr);
}

}  // namespace zkt
