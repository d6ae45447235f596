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
#include <vector>

#include "zkt/mle/mle.hpp"
#include "zkt/sumcheck/sumcheck.hpp"

namespace zkt {

// Proves P~(r) = sum_x eq(r, x) prod_i factor_i(x) for an elementwise
// product P of the factors. Claims come back for every factor at one point.
template <class F>
SumOfProducts<F> hadamard_shape(std::size_t factors) {
  SumOfProducts<F> s;
  s.num_tables = factors + 1;
  std::vector<std::size_t> all(factors + 1);
  for (std::size_t i = 0; i <= factors; ++i) all[i] = i;
  s.terms.push_back({F::one(), all});
  return s;
}

template <class F>
std::pair<SumcheckProof<F>, SumcheckClaims<F>> prove_hadamard(std::vector<std::vector<F>> factors,
                                                              std::span<const F> r, Transcript& tr) {
  Combination<F> comb(static_cast<unsigned>(r.size()));
  comb.add_table(eq_table<F>(r));
  for (auto& f : factors) comb.add_table(std::move(f));
  std::vector<std::size_t> all(comb.tables().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  comb.add_term(F::one(), all);
  auto out = prove_sumcheck(std::move(comb), tr);
  // Drop the eq entry so values line up with the factors.
  out.second.values.erase(out.second.values.begin());
  return out;
}

template <class F>
std::optional<SumcheckClaims<F>> verify_hadamard(std::size_t factors, std::span<const F> r, const F& claim,
                                                 const SumcheckProof<F>& proof, Transcript& tr) {
  auto sc = verify_sumcheck(hadamard_shape<F>(factors), static_cast<unsigned>(r.size()), claim, proof, tr);
  if (!sc) return std::nullopt;
  if (sc->values[0] != eq_eval<F>(r, sc->point)) return std::nullopt;
  sc->values.erase(sc->values.begin());
  return sc;
}

}  // namespace zkt
