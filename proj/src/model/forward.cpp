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


#include "zkt/model/forward.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "zkt/oracle/reference.hpp"

namespace zkt {

namespace {

using IMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using DMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::vector<std::int64_t> matmul(const std::vector<std::int64_t>& a, std::size_t rows, const IntMatrix& b) {
  Eigen::Map<const IMat> am(a.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(b.rows));
  Eigen::Map<const IMat> bm(b.data.data(), static_cast<Eigen::Index>(b.rows), static_cast<Eigen::Index>(b.cols));
  std::vector<std::int64_t> out(rows * b.cols);
  Eigen::Map<IMat>(out.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(b.cols)) = am * bm;
  return out;
}

std::vector<std::int64_t> add(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  std::vector<std::int64_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

// (head, i, j) = sum_k q[i, head k] key[j, head k]
std::vector<std::int64_t> head_scores(const std::vector<std::int64_t>& q, const std::vector<std::int64_t>& key,
                                      std::size_t seq, unsigned heads, unsigned d_head) {
  const std::size_t d = static_cast<std::size_t>(heads) * d_head;
  std::vector<std::int64_t> out(heads * seq * seq, 0);
  for (unsigned h = 0; h < heads; ++h) {
    for (std::size_t i = 0; i < seq; ++i) {
      for (std::size_t j = 0; j < seq; ++j) {
        std::int64_t acc = 0;
        for (unsigned k = 0; k < d_head; ++k) acc += q[i * d + h * d_head + k] * key[j * d + h * d_head + k];
        out[(h * seq + i) * seq + j] = acc;
      }
    }
  }
  return out;
}

// ctx[i, head k] = sum_j y[(head, i), j] v[j, head k]
std::vector<std::int64_t> head_context(const std::vector<std::int64_t>& y, const std::vector<std::int64_t>& v,
                                       std::size_t seq, unsigned heads, unsigned d_head) {
  const std::size_t d = static_cast<std::size_t>(heads) * d_head;
  std::vector<std::int64_t> out(seq * d, 0);
  for (unsigned h = 0; h < heads; ++h) {
    for (std::size_t i = 0; i < seq; ++i) {
      for (unsigned k = 0; k < d_head; ++k) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < seq; ++j) acc += y[(h * seq + i) * seq + j] * v[j * d + h * d_head + k];
        out[i * d + h * d_head + k] = acc;
      }
    }
  }
  return out;
}

}  // namespace

Trace forward(const WeightSet& w, const std::vector<std::uint32_t>& tokens) {
  const ModelConfig& c = w.config;
  Trace t;
  t.tokens = tokens;
  t.ops = derive_ops(c, tokens.size());
  const std::size_t seq = tokens.size(), d = c.d_model;
  t.embedded.resize(seq * d);
  for (std::size_t i = 0; i < seq; ++i) {
    if (tokens[i] >= c.vocab) throw ShapeError("token id out of vocabulary");
    for (std::size_t j = 0; j < d; ++j) t.embedded[i * d + j] = w.embedding.at(tokens[i], j) + w.position.at(i, j);
  }

  const std::vector<std::int64_t>* x = &t.embedded;
  for (const auto& L : w.layers) {
    LayerTrace lt;
    lt.input = *x;
    lt.ln1 = layernorm_compute(lt.input, seq, L.ln1_gain.data, L.ln1_bias.data, t.ops.layernorm);
    const auto& h1 = lt.ln1.output.quotient;
    lt.q = rescale_compute(matmul(h1, seq, L.wq), t.ops.linear);
    lt.k = rescale_compute(matmul(h1, seq, L.wk), t.ops.linear);
    lt.v = rescale_compute(matmul(h1, seq, L.wv), t.ops.linear);
    lt.scores = rescale_compute(head_scores(lt.q.quotient, lt.k.quotient, seq, c.heads, c.d_head()), t.ops.scores);
    lt.attn = softmax_compute(lt.scores.quotient, c.heads * seq, seq, t.ops.attn);
    lt.context = rescale_compute(head_context(lt.attn.output, lt.v.quotient, seq, c.heads, c.d_head()), t.ops.context);
    lt.proj = rescale_compute(matmul(lt.context.quotient, seq, L.wo), t.ops.linear);
    lt.mid = add(lt.input, lt.proj.quotient);
    lt.ln2 = layernorm_compute(lt.mid, seq, L.ln2_gain.data, L.ln2_bias.data, t.ops.layernorm);
    const auto& h2 = lt.ln2.output.quotient;
    switch (c.activation) {
      case Activation::relu:
        lt.relu = relu_compute(matmul(h2, seq, L.w_up), t.ops.linear);
        break;
      case Activation::gelu:
        lt.up = rescale_compute(matmul(h2, seq, L.w_up), t.ops.linear);
        lt.act = gated_compute(lt.up.quotient, nullptr, *t.ops.gated);
        break;
      case Activation::swiglu:
        lt.up = rescale_compute(matmul(h2, seq, L.w_up), t.ops.linear);
        lt.gate = rescale_compute(matmul(h2, seq, L.w_gate), t.ops.linear);
        lt.act = gated_compute(lt.up.quotient, &lt.gate.quotient, *t.ops.gated);
        break;
    }
    lt.down = rescale_compute(matmul(lt.hidden(c.activation), seq, L.w_down), t.ops.linear);
    lt.output = add(lt.mid, lt.down.quotient);
    t.layers.push_back(std::move(lt));
    x = &t.layers.back().output;
  }
  t.final_ln = layernorm_compute(*x, seq, w.final_gain.data, w.final_bias.data, t.ops.layernorm);
  t.head = rescale_compute(matmul(t.final_ln.output.quotient, seq, w.head), t.ops.linear);
  return t;
}

std::vector<std::uint32_t> greedy_tokens(const std::vector<std::int64_t>& logits, std::size_t vocab) {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i + vocab <= logits.size(); i += vocab) {
    auto it = std::max_element(logits.begin() + static_cast<std::ptrdiff_t>(i),
                               logits.begin() + static_cast<std::ptrdiff_t>(i + vocab));
    out.push_back(static_cast<std::uint32_t>(it - logits.begin() - static_cast<std::ptrdiff_t>(i)));
  }
  return out;
}

std::vector<double> reference_forward(const WeightSet& w, const std::vector<std::uint32_t>& tokens) {
  const ModelConfig& c = w.config;
  const double g = static_cast<double>(c.gamma());
  auto deq = [&](const IntMatrix& m) {
    DMat out(static_cast<Eigen::Index>(m.rows), static_cast<Eigen::Index>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
      for (std::size_t j = 0; j < m.cols; ++j) out(i, j) = m.at(i, j) / g;
    return out;
  };
  auto norm = [&](const DMat& x, const IntMatrix& gain, const IntMatrix& bias) {
    DMat out(x.rows(), x.cols());
    std::vector<double> gv, bv;
    for (auto v : gain.data) gv.push_back(v / g);
    for (auto v : bias.data) bv.push_back(v / g);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      std::vector<double> row(x.row(i).data(), x.row(i).data() + x.cols());
      auto r = oracle::layernorm(row, gv, bv, c.ln_eps);
      for (Eigen::Index j = 0; j < x.cols(); ++j) out(i, j) = r[static_cast<std::size_t>(j)];
    }
    return out;
  };
  const Eigen::Index seq = static_cast<Eigen::Index>(tokens.size()), d = c.d_model, dh = c.d_head();
  DMat x(seq, d);
  DMat emb = deq(w.embedding), pos = deq(w.position);
  for (Eigen::Index i = 0; i < seq; ++i) x.row(i) = emb.row(tokens[static_cast<std::size_t>(i)]) + pos.row(i);

  for (const auto& L : w.layers) {
    DMat h = norm(x, L.ln1_gain, L.ln1_bias);
    DMat q = h * deq(L.wq), k = h * deq(L.wk), v = h * deq(L.wv);
    DMat ctx(seq, d);
    for (Eigen::Index head = 0; head < static_cast<Eigen::Index>(c.heads); ++head) {
      DMat s = q.middleCols(head * dh, dh) * k.middleCols(head * dh, dh).transpose() / std::sqrt(double(dh));
      DMat p(seq, seq);
      for (Eigen::Index i = 0; i < seq; ++i) {
        std::vector<double> row(s.row(i).data(), s.row(i).data() + seq);
        auto sm = oracle::softmax(row);
        for (Eigen::Index j = 0; j < seq; ++j) p(i, j) = sm[static_cast<std::size_t>(j)];
      }
      ctx.middleCols(head * dh, dh) = p * v.middleCols(head * dh, dh);
    }
    x += ctx * deq(L.wo);
    DMat h2 = norm(x, L.ln2_gain, L.ln2_bias);
    DMat up = h2 * deq(L.w_up);
    DMat act(up.rows(), up.cols());
    DMat gate;
    if (c.activation == Activation::swiglu) gate = h2 * deq(L.w_gate);
    for (Eigen::Index i = 0; i < up.rows(); ++i) {
      for (Eigen::Index j = 0; j < up.cols(); ++j) {
        switch (c.activation) {
          case Activation::relu:
            act(i, j) = oracle::relu(up(i, j));
            break;
          case Activation::gelu:
            act(i, j) = oracle::gelu_sigmoid(up(i, j));
            break;
          case Activation::swiglu:
            act(i, j) = oracle::swish(up(i, j), c.swiglu_beta) * gate(i, j);
            break;
        }
      }
    }
    x += act * deq(L.w_down);
  }
  DMat logits = norm(x, w.final_gain, w.final_bias) * deq(w.head);
  return std::vector<double>(logits.data(), logits.data() + logits.size());
}

}  // namespace zkt
