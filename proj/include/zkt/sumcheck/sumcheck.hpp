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

#include "zkt/algebra/bytes.hpp"
#include "zkt/algebra/transcript.hpp"
#include "zkt/common/bits.hpp"
#include "zkt/common/errors.hpp"
#include "zkt/common/parallel.hpp"

namespace zkt {

// Sum of products of multilinear tables: sum_t coeff_t * prod_{j in t} table_j.
// The verifier knows only the term structure, never the tables.
template <class F>
struct SumOfProducts {
  struct Term {
    F coeff;
    std::vector<std::size_t> factors;
  };

  std::size_t num_tables = 0;
  std::vector<Term> terms;

  unsigned degree() const {
    std::size_t d = 0;
    for (const auto& t : terms) d = std::max(d, t.factors.size());
    return static_cast<unsigned>(d);
  }

  F evaluate(std::span<const F> values) const {
    if (values.size() != num_tables) throw ShapeError("sum of products: wrong number of values");
    F acc = F::zero();
    for (const auto& t : terms) {
      F p = t.coeff;
      for (auto j : t.factors) p *= values[j];
      acc += p;
    }
    return acc;
  }
};

// Prover-side combination: the term structure plus the tables themselves.
template <class F>
class Combination {
 public:
  explicit Combination(unsigned num_vars) : num_vars_(num_vars) {}

  std::size_t add_table(std::vector<F> table) {
    if (table.size() != (std::size_t{1} << num_vars_)) {
      throw ShapeError("sumcheck table has " + std::to_string(table.size()) + " entries, expected 2^" +
                       std::to_string(num_vars_));
    }
    tables_.push_back(std::move(table));
    shape_.num_tables = tables_.size();
    return tables_.size() - 1;
  }

  void add_term(const F& coeff, std::vector<std::size_t> factors) {
    for (auto j : factors) {
      if (j >= tables_.size()) throw ShapeError("sumcheck term refers to unknown table");
    }
    shape_.terms.push_back({coeff, std::move(factors)});
  }

  unsigned num_vars() const { return num_vars_; }
  const SumOfProducts<F>& shape() const { return shape_; }
  std::vector<std::vector<F>>& tables() { return tables_; }

  F sum() const {
    F acc = F::zero();
    std::vector<F> vals(tables_.size());
    for (std::size_t x = 0; x < (std::size_t{1} << num_vars_); ++x) {
      for (std::size_t j = 0; j < tables_.size(); ++j) vals[j] = tables_[j][x];
      acc += shape_.evaluate(vals);
    }
    return acc;
  }

 private:
  unsigned num_vars_;
  std::vector<std::vector<F>> tables_;
  SumOfProducts<F> shape_;
};

template <class F>
struct SumcheckProof {
  // Coefficients, constant term first.
  std::vector<std::vector<F>> round_polys;
  std::vector<F> final_values;

  void write(ByteWriter& w) const {
    w.u32(static_cast<std::uint32_t>(round_polys.size()));
    for (const auto& p : round_polys) w.scalars(p);
    w.scalars(final_values);
  }
  static SumcheckProof read(ByteReader& r) {
    SumcheckProof p;
    std::uint32_t rounds = r.u32();
    if (rounds > 64) throw DecodeError("too many sumcheck rounds");
    for (std::uint32_t i = 0; i < rounds; ++i) p.round_polys.push_back(r.scalars<F>());
    p.final_values = r.scalars<F>();
    return p;
  }
};

// Outcome of a sumcheck: the random point and the claimed table values
// there. The caller must still discharge each value.
template <class F>
struct SumcheckClaims {
  std::vector<F> point;
  std::vector<F> values;
};

namespace detail {

// Coefficients of the unique polynomial of degree < n through (k, ys[k]).
template <class F>
std::vector<F> interpolate_small(const std::vector<F>& ys) {
  const std::size_t n = ys.size();
  std::vector<F> coeffs(n, F::zero());
  for (std::size_t k = 0; k < n; ++k) {
    // basis_k(X) = prod_{j != k} (X - j) / (k - j)
    std::vector<F> basis{F::one()};
    F denom = F::one();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      std::vector<F> next(basis.size() + 1, F::zero());
      F shift = -F::from_u64(j);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        next[i] += basis[i] * shift;
        next[i + 1] += basis[i];
      }
      basis.swap(next);
      denom *= F::from_i64(static_cast<std::int64_t>(k) - static_cast<std::int64_t>(j));
    }
    F scale = ys[k] * denom.inverse();
    for (std::size_t i = 0; i < n; ++i) coeffs[i] += basis[i] * scale;
  }
  return coeffs;
}

template <class F>
F horner(const std::vector<F>& coeffs, const F& x) {
  F acc = F::zero();
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

}  // namespace detail

// Binds variables most-significant first. Absorbs each round polynomial and
// the final values into the transcript.
template <class F>
std::pair<SumcheckProof<F>, SumcheckClaims<F>> prove_sumcheck(Combination<F> comb, Transcript& tr) {
  const unsigned deg = comb.shape().degree();
  const auto& shape = comb.shape();
  auto& tables = comb.tables();
  const std::size_t nt = tables.size();
  SumcheckProof<F> proof;
  SumcheckClaims<F> claims;

  std::size_t len = std::size_t{1} << comb.num_vars();
  for (unsigned round = 0; round < comb.num_vars(); ++round) {
    const std::size_t half = len / 2;
    const std::size_t chunks = std::max<std::size_t>(1, std::min(thread_count(), half / 64));
    std::vector<std::vector<F>> partial(chunks, std::vector<F>(deg + 1, F::zero()));
    parallel_for(chunks, [&](std::size_t c) {
      std::vector<F> at(nt), step(nt);
      auto& acc = partial[c];
      for (std::size_t i = half * c / chunks; i < half * (c + 1) / chunks; ++i) {
        for (std::size_t j = 0; j < nt; ++j) {
          at[j] = tables[j][i];
          step[j] = tables[j][i + half] - at[j];
        }
        for (unsigned x = 0; x <= deg; ++x) {
          if (x > 0) {
            for (std::size_t j = 0; j < nt; ++j) at[j] += step[j];
          }
          for (const auto& t : shape.terms) {
            F p = t.coeff;
            for (auto j : t.factors) p *= at[j];
            acc[x] += p;
          }
        }
      }
    });
    std::vector<F> evals(deg + 1, F::zero());
    for (const auto& p : partial) {
      for (unsigned x = 0; x <= deg; ++x) evals[x] += p[x];
    }
    std::vector<F> coeffs = detail::interpolate_small(evals);
    tr.absorb_scalars<F>("sumcheck.round", coeffs);
    F r = tr.challenge<F>("sumcheck.r");
    proof.round_polys.push_back(std::move(coeffs));
    claims.point.push_back(r);

    parallel_for(nt, [&](std::size_t j) {
      auto& t = tables[j];
      for (std::size_t i = 0; i < half; ++i) t[i] += r * (t[i + half] - t[i]);
      t.resize(half);
    });
    len = half;
  }
  for (auto& t : tables) claims.values.push_back(t[0]);
  proof.final_values = claims.values;
  tr.absorb_scalars<F>("sumcheck.final", claims.values);
  return {std::move(proof), std::move(claims)};
}

// Returns the point and the prover's claimed table values, or nullopt if a
// round check fails. A proof with the wrong number of rounds or values is
// malformed and raises DecodeError.
template <class F>
std::optional<SumcheckClaims<F>> verify_sumcheck(const SumOfProducts<F>& shape, unsigned num_vars, F claim,
                                                 const SumcheckProof<F>& proof, Transcript& tr) {
  if (proof.round_polys.size() != num_vars) throw DecodeError("sumcheck round count mismatch");
  if (proof.final_values.size() != shape.num_tables) throw DecodeError("sumcheck final value count mismatch");
  const unsigned deg = shape.degree();
  SumcheckClaims<F> out;
  for (const auto& coeffs : proof.round_polys) {
    if (coeffs.empty() || coeffs.size() > deg + 1) return std::nullopt;
    F at01 = coeffs[0];
    for (const auto& c : coeffs) at01 += c;
    if (at01 != claim) return std::nullopt;
    tr.absorb_scalars<F>("sumcheck.round", coeffs);
    F r = tr.challenge<F>("sumcheck.r");
    claim = detail::horner(coeffs, r);
    out.point.push_back(r);
  }
  if (shape.evaluate(proof.final_values) != claim) return std::nullopt;
  out.values = proof.final_values;
  tr.absorb_scalars<F>("sumcheck.final", out.values);
  return out;
}

}  // namespace zkt
