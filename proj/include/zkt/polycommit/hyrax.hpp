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
#include <string>
#include <vector>

#include "zkt/algebra/backend.hpp"
#include "zkt/algebra/batch_inverse.hpp"
#include "zkt/algebra/bytes.hpp"
#include "zkt/algebra/hash.hpp"
#include "zkt/algebra/msm.hpp"
#include "zkt/algebra/rng.hpp"
#include "zkt/algebra/transcript.hpp"
#include "zkt/common/parallel.hpp"
#include "zkt/mle/mle.hpp"

namespace zkt {

// A tensor with 2^d entries is committed as a 2^ceil(d/2) x 2^floor(d/2)
// row-major matrix, one Pedersen vector commitment per row.
struct Layout {
  unsigned log_rows = 0;
  unsigned log_cols = 0;

  static Layout for_log_size(unsigned log_size) {
    return Layout{log_size - log_size / 2, log_size / 2};
  }
  std::size_t rows() const { return std::size_t{1} << log_rows; }
  std::size_t cols() const { return std::size_t{1} << log_cols; }
};

template <GroupBackend G>
struct PublicParams {
  using Point = typename G::Point;

  unsigned max_log_dim = 0;
  std::vector<Point> generators;
  Point blinding_generator;
  // Carries the inner-product value inside evaluation proofs.
  Point value_generator;

  static PublicParams keygen(unsigned max_log_dim, std::span<const std::uint8_t> seed) {
    PublicParams pp;
    pp.max_log_dim = max_log_dim;
    std::size_t count = std::size_t{1} << ((max_log_dim + 1) / 2);
    auto derive = [&](std::string_view role, std::uint64_t i) {
      Digest d = Sha256().update("zkt.pp").update(G::kName).update(seed).update(role).update_u64(i).finish();
      return Point::hash_to_curve(d);
    };
    pp.generators.reserve(count);
    for (std::size_t i = 0; i < count; ++i) pp.generators.push_back(derive("g", i));
    pp.blinding_generator = derive("h", 0);
    pp.value_generator = derive("u", 0);
    return pp;
  }

  void check_capacity(unsigned log_size) const {
    if (log_size > max_log_dim) {
      throw CapacityError("tensor of 2^" + std::to_string(log_size) + " entries exceeds max_log_dim " +
                          std::to_string(max_log_dim));
    }
  }

  void write(ByteWriter& w) const {
    w.str(G::kName);
    w.u32(max_log_dim);
    w.points(generators);
    w.point(blinding_generator);
    w.point(value_generator);
  }

  static PublicParams read(ByteReader& r) {
    PublicParams pp;
    if (r.str() != G::kName) throw DecodeError("public parameters are for another group");
    pp.max_log_dim = r.u32();
    if (pp.max_log_dim > 40) throw DecodeError("max_log_dim out of range");
    pp.generators = r.points<Point>();
    if (pp.generators.size() != (std::size_t{1} << ((pp.max_log_dim + 1) / 2))) {
      throw DecodeError("generator count does not match max_log_dim");
    }
    pp.blinding_generator = r.point<Point>();
    pp.value_generator = r.point<Point>();
    return pp;
  }
};

template <GroupBackend G>
struct Commitment {
  using Scalar = typename G::Scalar;
  using Point = typename G::Point;

  unsigned log_size = 0;
  std::vector<Point> rows;

  Layout layout() const { return Layout::for_log_size(log_size); }

  Commitment operator+(const Commitment& o) const {
    if (log_size != o.log_size) throw ShapeError("commitment sizes differ");
    Commitment c = *this;
    for (std::size_t i = 0; i < rows.size(); ++i) c.rows[i] = rows[i] + o.rows[i];
    return c;
  }
  Commitment scaled(const Scalar& s) const {
    Commitment c = *this;
    for (auto& p : c.rows) p = scalar_mul(p, s);
    return c;
  }
  bool operator==(const Commitment& o) const { return log_size == o.log_size && rows == o.rows; }

  void absorb_into(Transcript& t, std::string_view label) const {
    t.absorb_u64(label, log_size);
    t.absorb_points<Point>(label, rows);
  }

  void write(ByteWriter& w) const {
    w.u8(static_cast<std::uint8_t>(log_size));
    w.points(rows);
  }
  static Commitment read(ByteReader& r) {
    Commitment c;
    c.log_size = r.u8();
    if (c.log_size > 40) throw DecodeError("commitment size out of range");
    c.rows = r.points<Point>();
    if (c.rows.size() != c.layout().rows()) throw DecodeError("row count does not match layout");
    return c;
  }
};

// Prover-side view: the committed values, the per-row blinders and the
// public commitment.
template <GroupBackend G>
struct Committed {
  using Scalar = typename G::Scalar;

  std::vector<Scalar> data;
  std::vector<Scalar> blinders;
  Commitment<G> com;

  unsigned log_size() const { return com.log_size; }
};

template <GroupBackend G>
Commitment<G> commit(const PublicParams<G>& pp, std::span<const typename G::Scalar> data,
                     std::span<const typename G::Scalar> blinders) {
  using Point = typename G::Point;
  unsigned d = log2_exact(data.size());
  pp.check_capacity(d);
  Layout lay = Layout::for_log_size(d);
  if (blinders.size() != lay.rows()) throw ShapeError("one blinder per row required");
  Commitment<G> c;
  c.log_size = d;
  c.rows.resize(lay.rows());
  std::span<const Point> gens(pp.generators.data(), lay.cols());
  parallel_for(lay.rows(), [&](std::size_t r) {
    Point row = msm(data.subspan(r * lay.cols(), lay.cols()), gens);
    if (!blinders[r].is_zero()) row = row + scalar_mul(pp.blinding_generator, blinders[r]);
    c.rows[r] = row.normalized();
  });
  return c;
}

// Hiding commitment with fresh blinders.
template <GroupBackend G>
Committed<G> commit_hiding(const PublicParams<G>& pp, std::vector<typename G::Scalar> data, Rng& rng) {
  using Scalar = typename G::Scalar;
  Committed<G> out;
  out.data = std::move(data);
  Layout lay = Layout::for_log_size(log2_exact(out.data.size()));
  out.blinders.resize(lay.rows());
  for (auto& b : out.blinders) b = rng.field<Scalar>();
  out.com = commit<G>(pp, out.data, out.blinders);
  return out;
}

// Zero blinding: anyone holding the data can recompute the commitment.
template <GroupBackend G>
Committed<G> commit_public(const PublicParams<G>& pp, std::vector<typename G::Scalar> data) {
  using Scalar = typename G::Scalar;
  Committed<G> out;
  out.data = std::move(data);
  Layout lay = Layout::for_log_size(log2_exact(out.data.size()));
  out.blinders.assign(lay.rows(), Scalar::zero());
  out.com = commit<G>(pp, out.data, out.blinders);
  return out;
}

// a + alpha * b on data, blinders and commitment alike.
template <GroupBackend G>
Committed<G> combine(const Committed<G>& a, const typename G::Scalar& alpha, const Committed<G>& b) {
  if (a.data.size() != b.data.size()) throw ShapeError("combine: size mismatch");
  Committed<G> out;
  out.data.resize(a.data.size());
  for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = a.data[i] + alpha * b.data[i];
  out.blinders.resize(a.blinders.size());
  for (std::size_t i = 0; i < a.blinders.size(); ++i) out.blinders[i] = a.blinders[i] + alpha * b.blinders[i];
  out.com = combine(a.com, alpha, b.com);
  return out;
}

template <GroupBackend G>
Commitment<G> combine(const Commitment<G>& a, const typename G::Scalar& alpha, const Commitment<G>& b) {
  return a + b.scaled(alpha);
}

// Evaluation proof: the prover folds the rows with eq weights of the row
// coordinates, then proves the inner product of the folded row with the
// eq weights of the column coordinates by a log-round folding argument.
template <GroupBackend G>
struct EvalProof {
  using Scalar = typename G::Scalar;
  using Point = typename G::Point;

  Scalar value;
  std::vector<Point> lefts;
  std::vector<Point> rights;
  Scalar final_scalar;
  Scalar final_blinder;

  void write(ByteWriter& w) const {
    w.scalar(value);
    w.points(lefts);
    w.points(rights);
    w.scalar(final_scalar);
    w.scalar(final_blinder);
  }
  static EvalProof read(ByteReader& r) {
    EvalProof p;
    p.value = r.scalar<Scalar>();
    p.lefts = r.points<Point>();
    p.rights = r.points<Point>();
    p.final_scalar = r.scalar<Scalar>();
    p.final_blinder = r.scalar<Scalar>();
    return p;
  }
};

template <GroupBackend G>
EvalProof<G> prove_eval(const PublicParams<G>& pp, const Committed<G>& t,
                        std::span<const typename G::Scalar> point, Transcript& tr, Rng& rng) {
  using Scalar = typename G::Scalar;
  using Point = typename G::Point;
  const unsigned d = t.log_size();
  if (point.size() != d) throw ShapeError("prove_eval: point dimension mismatch");
  Layout lay = Layout::for_log_size(d);
  std::vector<Scalar> row_w = eq_table(point.subspan(0, lay.log_rows));
  std::vector<Scalar> b = eq_table(point.subspan(lay.log_rows));

  std::vector<Scalar> a(lay.cols(), Scalar::zero());
  Scalar blind = Scalar::zero();
  for (std::size_t r = 0; r < lay.rows(); ++r) {
    if (row_w[r].is_zero()) continue;
    const Scalar* row = &t.data[r * lay.cols()];
    for (std::size_t c = 0; c < lay.cols(); ++c) a[c] += row_w[r] * row[c];
    blind += row_w[r] * t.blinders[r];
  }
  EvalProof<G> proof;
  proof.value = Scalar::zero();
  for (std::size_t c = 0; c < lay.cols(); ++c) proof.value += a[c] * b[c];

  tr.absorb_scalars<Scalar>("eval.point", point);
  tr.absorb_scalar("eval.value", proof.value);
  Point u = scalar_mul(pp.value_generator, tr.challenge<Scalar>("eval.u"));

  std::vector<Point> g(pp.generators.begin(), pp.generators.begin() + lay.cols());
  for (std::size_t n = lay.cols(); n > 1; n /= 2) {
    std::size_t h = n / 2;
    Scalar c_left = Scalar::zero(), c_right = Scalar::zero();
    for (std::size_t i = 0; i < h; ++i) {
      c_left += a[i] * b[h + i];
      c_right += a[h + i] * b[i];
    }
    Scalar s_left = rng.field<Scalar>(), s_right = rng.field<Scalar>();
    std::vector<Scalar> ls(a.begin(), a.begin() + h), rs(a.begin() + h, a.begin() + n);
    std::vector<Point> lp(g.begin() + h, g.begin() + n), rp(g.begin(), g.begin() + h);
    ls.push_back(c_left);
    ls.push_back(s_left);
    lp.push_back(u);
    lp.push_back(pp.blinding_generator);
    rs.push_back(c_right);
    rs.push_back(s_right);
    rp.push_back(u);
    rp.push_back(pp.blinding_generator);
    Point left = msm(ls, lp).normalized();
    Point right = msm(rs, rp).normalized();
    proof.lefts.push_back(left);
    proof.rights.push_back(right);
    tr.absorb_point("eval.L", left);
    tr.absorb_point("eval.R", right);
    Scalar x = tr.challenge<Scalar>("eval.x");
    Scalar xi = x.inverse();
    for (std::size_t i = 0; i < h; ++i) {
      a[i] = a[i] * x + a[h + i] * xi;
      b[i] = b[i] * xi + b[h + i] * x;
      g[i] = scalar_mul(g[i], xi) + scalar_mul(g[h + i], x);
    }
    Point::batch_normalize(std::span<Point>(g.data(), h));
    Scalar x2 = x.square();
    blind += x2 * s_left + xi.square() * s_right;
  }
  proof.final_scalar = a[0];
  proof.final_blinder = blind;
  tr.absorb_scalar("eval.a", proof.final_scalar);
  tr.absorb_scalar("eval.blind", proof.final_blinder);
  return proof;
}

template <GroupBackend G>
bool verify_eval(const PublicParams<G>& pp, const Commitment<G>& com,
                 std::span<const typename G::Scalar> point, const EvalProof<G>& proof, Transcript& tr) {
  using Scalar = typename G::Scalar;
  using Point = typename G::Point;
  const unsigned d = com.log_size;
  if (point.size() != d || d > pp.max_log_dim) return false;
  Layout lay = Layout::for_log_size(d);
  if (com.rows.size() != lay.rows()) return false;
  if (proof.lefts.size() != lay.log_cols || proof.rights.size() != lay.log_cols) return false;

  tr.absorb_scalars<Scalar>("eval.point", point);
  tr.absorb_scalar("eval.value", proof.value);
  Scalar u_scale = tr.challenge<Scalar>("eval.u");

  std::vector<Scalar> xs;
  for (std::size_t j = 0; j < lay.log_cols; ++j) {
    tr.absorb_point("eval.L", proof.lefts[j]);
    tr.absorb_point("eval.R", proof.rights[j]);
    xs.push_back(tr.challenge<Scalar>("eval.x"));
  }
  tr.absorb_scalar("eval.a", proof.final_scalar);
  tr.absorb_scalar("eval.blind", proof.final_blinder);
  std::vector<Scalar> xis = batch_inverse<Scalar>(xs);

  // Coefficient of original generator i after all folds: round j consumes
  // bit (log_cols - 1 - j) of i.
  std::vector<Scalar> s(lay.cols(), Scalar::one());
  for (std::size_t i = 0; i < lay.cols(); ++i) {
    for (std::size_t j = 0; j < lay.log_cols; ++j) {
      bool hi = (i >> (lay.log_cols - 1 - j)) & 1;
      s[i] *= hi ? xs[j] : xis[j];
    }
  }
  std::vector<Scalar> b = eq_table(point.subspan(lay.log_rows));
  Scalar b_final = Scalar::zero();
  for (std::size_t i = 0; i < lay.cols(); ++i) b_final += s[i] * b[i];
  std::vector<Scalar> row_w = eq_table(point.subspan(0, lay.log_rows));

  // sum_r w_r C_r + y U + sum_j (x_j^2 L_j + x_j^-2 R_j)
  //   - a <s, g> - a b_final U - blind h == 0
  std::vector<Scalar> scalars;
  std::vector<Point> points;
  for (std::size_t r = 0; r < lay.rows(); ++r) {
    scalars.push_back(row_w[r]);
    points.push_back(com.rows[r]);
  }
  for (std::size_t j = 0; j < lay.log_cols; ++j) {
    scalars.push_back(xs[j].square());
    points.push_back(proof.lefts[j]);
    scalars.push_back(xis[j].square());
    points.push_back(proof.rights[j]);
  }
  for (std::size_t i = 0; i < lay.cols(); ++i) {
    scalars.push_back(-(proof.final_scalar * s[i]));
    points.push_back(pp.generators[i]);
  }
  scalars.push_back(u_scale * (proof.value - proof.final_scalar * b_final));
  points.push_back(pp.value_generator);
  scalars.push_back(-proof.final_blinder);
  points.push_back(pp.blinding_generator);
  return msm(scalars, points).is_identity();
}

// Several tensors of one size opened at one point: the claimed values are
// absorbed, then a random combination is opened once.
template <GroupBackend G>
struct BatchEvalProof {
  using Scalar = typename G::Scalar;

  std::vector<Scalar> values;
  EvalProof<G> combined;

  void write(ByteWriter& w) const {
    w.scalars(values);
    combined.write(w);
  }
  static BatchEvalProof read(ByteReader& r) {
    BatchEvalProof p;
    p.values = r.scalars<Scalar>();
    p.combined = EvalProof<G>::read(r);
    return p;
  }
};

template <GroupBackend G>
BatchEvalProof<G> prove_eval_batch(const PublicParams<G>& pp, const std::vector<const Committed<G>*>& tensors,
                                   std::span<const typename G::Scalar> point, Transcript& tr, Rng& rng) {
  using Scalar = typename G::Scalar;
  if (tensors.empty()) throw ShapeError("empty evaluation batch");
  BatchEvalProof<G> proof;
  for (const auto* t : tensors) proof.values.push_back(mle_evaluate<Scalar>(t->data, point));
  tr.absorb_scalars<Scalar>("eval.batch.values", proof.values);
  Scalar mu = tr.challenge<Scalar>("eval.batch.mu");
  Committed<G> acc = *tensors[0];
  Scalar power = Scalar::one();
  for (std::size_t i = 1; i < tensors.size(); ++i) {
    power *= mu;
    if (tensors[i]->data.size() != acc.data.size()) throw ShapeError("evaluation batch sizes differ");
    for (std::size_t j = 0; j < acc.data.size(); ++j) acc.data[j] += power * tensors[i]->data[j];
    for (std::size_t j = 0; j < acc.blinders.size(); ++j) acc.blinders[j] += power * tensors[i]->blinders[j];
  }
  acc.com.log_size = tensors[0]->log_size();
  proof.combined = prove_eval<G>(pp, acc, point, tr, rng);
  return proof;
}

template <GroupBackend G>
bool verify_eval_batch(const PublicParams<G>& pp, const std::vector<const Commitment<G>*>& coms,
                       std::span<const typename G::Scalar> point, const BatchEvalProof<G>& proof, Transcript& tr) {
  using Scalar = typename G::Scalar;
  using Point = typename G::Point;
  if (coms.empty() || proof.values.size() != coms.size()) return false;
  const unsigned d = coms[0]->log_size;
  for (const auto* c : coms) {
    if (c->log_size != d || c->rows.size() != Layout::for_log_size(d).rows()) return false;
  }
  tr.absorb_scalars<Scalar>("eval.batch.values", proof.values);
  Scalar mu = tr.challenge<Scalar>("eval.batch.mu");
  Commitment<G> acc;
  acc.log_size = d;
  const std::size_t rows = coms[0]->rows.size();
  acc.rows.resize(rows);
  std::vector<Scalar> powers(coms.size(), Scalar::one());
  for (std::size_t i = 1; i < coms.size(); ++i) powers[i] = powers[i - 1] * mu;
  parallel_for(rows, [&](std::size_t r) {
    std::vector<Point> pts;
    for (const auto* c : coms) pts.push_back(c->rows[r]);
    acc.rows[r] = msm(powers, pts).normalized();
  });
  Scalar expected = Scalar::zero();
  for (std::size_t i = 0; i < coms.size(); ++i) expected += powers[i] * proof.values[i];
  if (proof.combined.value != expected) return false;
  return verify_eval<G>(pp, acc, point, proof.combined, tr);
}

}  // namespace zkt
