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

#include <span>
#include <vector>

#include "zkt/mle/mle.hpp"
#include "zkt/sumcheck/sumcheck.hpp"

namespace zkt {

// Dimensions of C = A B in log2, all padded to powers of two.
struct MatmulDims {
  unsigned log_rows = 0;   // rows of A and C
  unsigned log_inner = 0;  // cols of A, rows of B
  unsigned log_cols = 0;   // cols of B and C
};

// Result of reducing C~(u, v) to one claim on each factor at a fresh w.
template <class F>
struct MatmulClaims {
  std::vector<F> a_point;  // u || w
  F a_value;
  std::vector<F> b_point;  // w || v
  F b_value;
};

template <class F>
SumOfProducts<F> matmul_shape() {
  SumOfProducts<F> s;
  s.num_tables = 2;
  s.terms.push_back({F::one(), {0, 1}});
  return s;
}

template <class F>
MatmulClaims<F> matmul_claims(std::span<const F> u, std::span<const F> v, const SumcheckClaims<F>& sc) {
  MatmulClaims<F> out;
  out.a_point.assign(u.begin(), u.end());
  out.a_point.insert(out.a_point.end(), sc.point.begin(), sc.point.end());
  out.b_point = sc.point;
  out.b_point.insert(out.b_point.end(), v.begin(), v.end());
  out.a_value = sc.values[0];
  out.b_value = sc.values[1];
  return out;
}

template <class F>
std::pair<SumcheckProof<F>, MatmulClaims<F>> prove_matmul(std::span<const F> a, std::span<const F> b,
                                                          const MatmulDims& dims, std::span<const F> u,
                                                          std::span<const F> v, Transcript& tr) {
  if (u.size() != dims.log_rows || v.size() != dims.log_cols) throw ShapeError("matmul: point dimension");
  Combination<F> comb(dims.log_inner);
  comb.add_table(fold_prefix(a, u));
  comb.add_table(fold_suffix(b, v));
  comb.add_term(F::one(), {0, 1});
  auto [proof, sc] = prove_sumcheck(std::move(comb), tr);
  return {std::move(proof), matmul_claims(u, v, sc)};
}

template <class F>
std::optional<MatmulClaims<F>> verify_matmul(const MatmulDims& dims, std::span<const F> u,
                                             std::span<const F> v, const F& claim,
                                             const SumcheckProof<F>& proof, Transcript& tr) {
  if (u.size() != dims.log_rows || v.size() != dims.log_cols) throw ShapeError("matmul: point dimension");
  auto sc = verify_sumcheck(matmul_shape<F>(), dims.log_inner, claim, proof, tr);
  if (!sc) return std::nullopt;
  return matmul_claims(u, v, *sc);
}

}  // namespace zkt
