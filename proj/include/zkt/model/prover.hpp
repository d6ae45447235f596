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

#include "zkt/model/forward.hpp"
#include "zkt/nonlinear/activation.hpp"
#include "zkt/nonlinear/layernorm.hpp"
#include "zkt/nonlinear/relu.hpp"
#include "zkt/sumcheck/matmul.hpp"

namespace zkt {

// Largest tensor or lookup domain, in log2 entries, the model touches.
unsigned required_log_dim(const ModelConfig& c);

template <GroupBackend G>
struct ModelTables {
  RescaleTables<G> linear;
  RescaleTables<G> scores;
  RescaleTables<G> context;
  std::optional<ReluTables<G>> relu;
  AttnTables<G> attn;
  LayerNormTables<G> layernorm;
  std::optional<GatedTables<G>> gated;

  QuotientMap<G> relu_map() const { return relu->map(); }
};

template <GroupBackend G>
ModelTables<G> build_model_tables(const PublicParams<G>& pp, const ModelConfig& c, const ModelOps& ops) {
  ModelTables<G> t;
  t.linear = build_rescale_tables<G>(pp, ops.linear);
  t.scores = build_rescale_tables<G>(pp, ops.scores);
  t.context = build_rescale_tables<G>(pp, ops.context);
  if (c.activation == Activation::relu) t.relu = build_relu_tables<G>(pp, ops.linear);
  t.attn = build_tables<G>(pp, ops.attn);
  t.layernorm = build_layernorm_tables<G>(pp, ops.layernorm);
  if (ops.gated) t.gated = build_gated_tables<G>(pp, *ops.gated);
  return t;
}

// ---------------------------------------------------------------- weights

template <GroupBackend G>
struct WeightCommitments {
  std::vector<Commitment<G>> tensors;

  void write(ByteWriter& w) const {
    w.u32(static_cast<std::uint32_t>(tensors.size()));
    for (const auto& c : tensors) c.write(w);
  }
  static WeightCommitments read(ByteReader& r) {
    WeightCommitments out;
    std::uint32_t n = r.u32();
    if (n > 4096) throw DecodeError("too many weight commitments");
    for (std::uint32_t i = 0; i < n; ++i) out.tensors.push_back(Commitment<G>::read(r));
    return out;
  }
  bool operator==(const WeightCommitments&) const = default;
};

template <GroupBackend G>
struct CommittedWeights {
  std::vector<Committed<G>> tensors;

  WeightCommitments<G> commitments() const {
    WeightCommitments<G> out;
    for (const auto& t : tensors) out.tensors.push_back(t.com);
    return out;
  }
  void write_blinders(ByteWriter& w) const {
    w.u32(static_cast<std::uint32_t>(tensors.size()));
    for (const auto& t : tensors) w.scalars(t.blinders);
  }
};

template <class F>
std::vector<std::vector<F>> read_blinders(ByteReader& r) {
  std::uint32_t n = r.u32();
  if (n > 4096) throw DecodeError("too many blinder vectors");
  std::vector<std::vector<F>> out;
  for (std::uint32_t i = 0; i < n; ++i) out.push_back(r.scalars<F>());
  return out;
}

// One hiding commitment per weight tensor, in WeightSet::tensors() order.
template <GroupBackend G>
CommittedWeights<G> zkllm_commit(const PublicParams<G>& pp, const WeightSet& w, Rng& rng) {
  using F = typename G::Scalar;
  CommittedWeights<G> out;
  for (const auto& [name, m] : w.tensors()) out.tensors.push_back(commit_hiding<G>(pp, to_field<F>(m->data), rng));
  return out;
}

// Recommits with stored blinders; same weights and blinders give identical bytes.
template <GroupBackend G>
CommittedWeights<G> zkllm_commit(const PublicParams<G>& pp, const WeightSet& w,
                                  const std::vector<std::vector<typename G::Scalar>>& blinders) {
  using F = typename G::Scalar;
  auto list = w.tensors();
  if (blinders.size() != list.size()) throw ShapeError("blinder count does not match the weight set");
  CommittedWeights<G> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    Committed<G> c;
    c.data = to_field<F>(list[i].second->data);
    c.blinders = blinders[i];
    c.com = commit<G>(pp, c.data, c.blinders);
    out.tensors.push_back(std::move(c));
  }
  return out;
}

// Index of each tensor inside the commitment list.
struct WeightIndex {
  std::size_t embedding = 0, position = 1;
  struct Layer {
    std::size_t ln1_gain, ln1_bias, wq, wk, wv, wo, ln2_gain, ln2_bias, w_up, w_gate, w_down;
  };
  std::vector<Layer> layers;
  std::size_t final_gain = 0, final_bias = 0, head = 0;
  std::size_t count = 0;

  explicit WeightIndex(const ModelConfig& c);
};

// --------------------------------------------------------------- fragments

// Output of a contraction C = sum_j left(., j) right(j, .) after rescale.
// Claims on C reduce to one opening of each operand.
template <GroupBackend G>
struct ContractionProof {
  RescaleProof<G> rescale;
  SumcheckProof<typename G::Scalar> sumcheck;
  EvalProof<G> left_eval;
  EvalProof<G> right_eval;

  // The committed output tensor: the activation when one is fused in.
  const Commitment<G>& output_com() const { return rescale.mapped_com ? *rescale.mapped_com : rescale.quotient_com; }

  void write(ByteWriter& w) const {
    rescale.write(w);
    sumcheck.write(w);
    left_eval.write(w);
    right_eval.write(w);
  }
  static ContractionProof read(ByteReader& r) {
    ContractionProof p;
    p.rescale = RescaleProof<G>::read(r);
    p.sumcheck = SumcheckProof<typename G::Scalar>::read(r);
    p.left_eval = EvalProof<G>::read(r);
    p.right_eval = EvalProof<G>::read(r);
    return p;
  }
};

// How an operand's variables relate to the contraction sumcheck: each is
// either pinned by the output point or bound to a sumcheck variable.
template <class F>
struct OperandBinding {
  struct Slot {
    bool pinned = false;
    F value{};
    unsigned var = 0;
  };
  std::vector<Slot> slots;

  void pin(std::span<const F> values) {
    for (const auto& v : values) slots.push_back({true, v, 0});
  }
  void bind(unsigned first, unsigned count) {
    for (unsigned i = 0; i < count; ++i) slots.push_back({false, F::zero(), first + i});
  }

  std::vector<F> point(std::span<const F> w) const {
    std::vector<F> out;
    for (const auto& s : slots) out.push_back(s.pinned ? s.value : w[s.var]);
    return out;
  }

  // Partial evaluation at the pinned values, laid out over the sumcheck
  // variables. Every sumcheck variable must appear exactly once.
  std::vector<F> table(std::span<const F> data, unsigned num_vars) const {
    std::vector<std::optional<F>> assignment;
    std::vector<std::size_t> order(num_vars);
    std::size_t free = 0;
    for (const auto& s : slots) {
      if (s.pinned) {
        assignment.push_back(s.value);
      } else {
        assignment.push_back(std::nullopt);
        order.at(s.var) = free++;
      }
    }
    if (free != num_vars) throw ShapeError("operand does not cover the contraction variables");
    return permute_variables<F>(bind_variables<F>(data, assignment), order);
  }
};

// Output point r splits into pinned coordinates of each operand plus a
// batch part: indices shared by both operands and the output (attention
// heads), summed under eq(batch, .) as the leading sumcheck variables.
template <class F>
struct ContractionPlan {
  std::vector<F> batch;
  unsigned num_vars = 0;
  OperandBinding<F> left;
  OperandBinding<F> right;

  SumOfProducts<F> shape() const {
    SumOfProducts<F> s;
    if (batch.empty()) {
      s.num_tables = 2;
      s.terms.push_back({F::one(), {0, 1}});
    } else {
      s.num_tables = 3;
      s.terms.push_back({F::one(), {0, 1, 2}});
    }
    return s;
  }
};

namespace detail {

// rows x inner times inner x cols.
template <class F>
ContractionPlan<F> linear_plan(std::span<const F> r, unsigned log_rows, unsigned log_inner) {
  ContractionPlan<F> p;
  p.num_vars = log_inner;
  p.left.pin(r.subspan(0, log_rows));
  p.left.bind(0, log_inner);
  p.right.bind(0, log_inner);
  p.right.pin(r.subspan(log_rows));
  return p;
}

// Scores (head, i, j) from Q (i, head, k) and K (j, head, k).
template <class F>
ContractionPlan<F> scores_plan(std::span<const F> r, unsigned log_heads, unsigned log_seq, unsigned log_head_dim) {
  auto rh = r.subspan(0, log_heads), ri = r.subspan(log_heads, log_seq), rj = r.subspan(log_heads + log_seq);
  ContractionPlan<F> p;
  p.batch.assign(rh.begin(), rh.end());
  p.num_vars = log_heads + log_head_dim;
  p.left.pin(ri);
  p.left.bind(0, p.num_vars);
  p.right.pin(rj);
  p.right.bind(0, p.num_vars);
  return p;
}

// Context (i, head, k) from Y (head, i, j) and V (j, head, k).
template <class F>
ContractionPlan<F> context_plan(std::span<const F> r, unsigned log_heads, unsigned log_seq) {
  auto ri = r.subspan(0, log_seq), rh = r.subspan(log_seq, log_heads), rk = r.subspan(log_seq + log_heads);
  ContractionPlan<F> p;
  p.batch.assign(rh.begin(), rh.end());
  p.num_vars = log_heads + log_seq;
  p.left.bind(0, log_heads);
  p.left.pin(ri);
  p.left.bind(log_heads, log_seq);
  p.right.bind(log_heads, log_seq);
  p.right.bind(0, log_heads);
  p.right.pin(rk);
  return p;
}

}  // namespace detail

template <GroupBackend G, class Plan>
ContractionProof<G> prove_contraction(const PublicParams<G>& pp, const RescaleConfig& cfg,
                                      const RescaleTables<G>& tables, const RescaleCommitted<G>& out,
                                      const Committed<G>* mapped, QuotientMap<G> map, const Committed<G>& left,
                                      const Committed<G>& right, Plan plan, Transcript& tr, Rng& rng) {
  using F = typename G::Scalar;
  ContractionProof<G> proof;
  auto [rp, claim] = rescale_prove<G>(pp, cfg, tables, out, mapped, map, tr, rng);
  proof.rescale = std::move(rp);
  ContractionPlan<F> cp = plan(std::span<const F>(claim.point));
  Combination<F> comb(cp.num_vars);
  comb.add_table(cp.left.table(left.data, cp.num_vars));
  comb.add_table(cp.right.table(right.data, cp.num_vars));
  if (!cp.batch.empty()) {
    const auto eq = eq_table<F>(cp.batch);
    const std::size_t inner = std::size_t{1} << (cp.num_vars - cp.batch.size());
    std::vector<F> spread(eq.size() * inner);
    for (std::size_t i = 0; i < spread.size(); ++i) spread[i] = eq[i / inner];
    comb.add_table(std::move(spread));
  }
  for (const auto& t : cp.shape().terms) comb.add_term(t.coeff, t.factors);
  auto [sc, claims] = prove_sumcheck(std::move(comb), tr);
  proof.sumcheck = std::move(sc);
  std::span<const F> w(claims.point);
  proof.left_eval = prove_eval<G>(pp, left, cp.left.point(w), tr, rng);
  proof.right_eval = prove_eval<G>(pp, right, cp.right.point(w), tr, rng);
  return proof;
}

template <GroupBackend G, class Plan>
bool verify_contraction(const PublicParams<G>& pp, const RescaleConfig& cfg, const RescaleTables<G>& tables,
                        unsigned log_size, QuotientMap<G> map, const Commitment<G>& left,
                        const Commitment<G>& right, Plan plan, const ContractionProof<G>& proof, Transcript& tr) {
  using F = typename G::Scalar;
  auto claim = rescale_verify<G>(pp, cfg, tables, log_size, map, proof.rescale, tr);
  if (!claim) return false;
  ContractionPlan<F> cp = plan(std::span<const F>(claim->point));
  if (left.log_size != cp.left.slots.size() || right.log_size != cp.right.slots.size()) return false;
  auto sc = verify_sumcheck(cp.shape(), cp.num_vars, claim->value, proof.sumcheck, tr);
  if (!sc) return false;
  std::span<const F> w(sc->point);
  if (!cp.batch.empty() && sc->values[2] != eq_eval<F>(cp.batch, w.subspan(0, cp.batch.size()))) return false;
  if (proof.left_eval.value != sc->values[0] || proof.right_eval.value != sc->values[1]) return false;
  return verify_eval<G>(pp, left, cp.left.point(w), proof.left_eval, tr) &&
         verify_eval<G>(pp, right, cp.right.point(w), proof.right_eval, tr);
}

// x0 = onehot(tokens) E + P[:seq], with the one-hot matrix public.
template <GroupBackend G>
struct EmbedProof {
  EvalProof<G> output_eval;
  EvalProof<G> position_eval;
  SumcheckProof<typename G::Scalar> sumcheck;
  EvalProof<G> embedding_eval;

  void write(ByteWriter& w) const {
    output_eval.write(w);
    position_eval.write(w);
    sumcheck.write(w);
    embedding_eval.write(w);
  }
  static EmbedProof read(ByteReader& r) {
    EmbedProof p;
    p.output_eval = EvalProof<G>::read(r);
    p.position_eval = EvalProof<G>::read(r);
    p.sumcheck = SumcheckProof<typename G::Scalar>::read(r);
    p.embedding_eval = EvalProof<G>::read(r);
    return p;
  }
};

template <GroupBackend G>
struct AttentionProof {
  ZkAttnProof<G> attn;
  EvalProof<G> logits_eval;

  void write(ByteWriter& w) const {
    attn.write(w);
    logits_eval.write(w);
  }
  static AttentionProof read(ByteReader& r) {
    AttentionProof p;
    p.attn = ZkAttnProof<G>::read(r);
    p.logits_eval = EvalProof<G>::read(r);
    return p;
  }
};

template <GroupBackend G>
struct LayerProof {
  LayerNormProof<G> ln1;
  ContractionProof<G> q, k, v, scores;
  AttentionProof<G> attn;
  ContractionProof<G> context, proj;
  LayerNormProof<G> ln2;
  ContractionProof<G> up;
  std::optional<ContractionProof<G>> gate;
  std::optional<GatedProof<G>> act;
  ContractionProof<G> down;

  const Commitment<G>& hidden_com() const { return act ? act->output_com() : up.output_com(); }

  // Reverse of the forward order.
  void write(ByteWriter& w) const {
    down.write(w);
    if (act) act->write(w);
    if (gate) gate->write(w);
    up.write(w);
    ln2.write(w);
    proj.write(w);
    context.write(w);
    attn.write(w);
    scores.write(w);
    v.write(w);
    k.write(w);
    q.write(w);
    ln1.write(w);
  }
  static LayerProof read(ByteReader& r, Activation a) {
    LayerProof p;
    p.down = ContractionProof<G>::read(r);
    if (a != Activation::relu) p.act = GatedProof<G>::read(r);
    if (a == Activation::swiglu) p.gate = ContractionProof<G>::read(r);
    p.up = ContractionProof<G>::read(r);
    p.ln2 = LayerNormProof<G>::read(r);
    p.proj = ContractionProof<G>::read(r);
    p.context = ContractionProof<G>::read(r);
    p.attn = AttentionProof<G>::read(r);
    p.scores = ContractionProof<G>::read(r);
    p.v = ContractionProof<G>::read(r);
    p.k = ContractionProof<G>::read(r);
    p.q = ContractionProof<G>::read(r);
    p.ln1 = LayerNormProof<G>::read(r);
    return p;
  }
};

// Fragments in reverse logical order: head, final norm, layers last to
// first, embedding.
template <GroupBackend G>
struct ProofBundle {
  Commitment<G> embedded_com;
  ContractionProof<G> head;
  LayerNormProof<G> final_ln;
  std::vector<LayerProof<G>> layers;  // forward order in memory
  EmbedProof<G> embed;

  void write(ByteWriter& w) const {
    embedded_com.write(w);
    head.write(w);
    final_ln.write(w);
    w.u32(static_cast<std::uint32_t>(layers.size()));
    for (auto it = layers.rbegin(); it != layers.rend(); ++it) it->write(w);
    embed.write(w);
  }
  static ProofBundle read(ByteReader& r, const ModelConfig& c) {
    ProofBundle p;
    p.embedded_com = Commitment<G>::read(r);
    p.head = ContractionProof<G>::read(r);
    p.final_ln = LayerNormProof<G>::read(r);
    std::uint32_t n = r.u32();
    if (n != c.layers) throw DecodeError("layer count does not match the model");
    p.layers.resize(n);
    for (std::uint32_t i = n; i-- > 0;) p.layers[i] = LayerProof<G>::read(r, c.activation);
    p.embed = EmbedProof<G>::read(r);
    return p;
  }
};

// Committed witness of one layer, mirroring LayerTrace.
template <GroupBackend G>
struct LayerCommitted {
  Committed<G> input;
  LayerNormCommitted<G> ln1;
  RescaleCommitted<G> q, k, v, scores;
  AttnCommitted<G> attn;
  RescaleCommitted<G> context, proj;
  Committed<G> mid;
  LayerNormCommitted<G> ln2;
  RescaleCommitted<G> up, gate;
  Committed<G> relu_output;
  GatedCommitted<G> act;
  RescaleCommitted<G> down;
  Committed<G> output;

  const Committed<G>& hidden(Activation a) const { return a == Activation::relu ? relu_output : act.output(); }
};

namespace detail {

template <GroupBackend G>
void absorb_wire(Transcript& tr, const Commitment<G>& c) {
  c.absorb_into(tr, "model.wire");
}

// Public statement: configuration, prompt, output and weight commitments.
template <GroupBackend G>
Transcript model_transcript(const ModelConfig& c, const std::vector<std::uint32_t>& tokens,
                            const std::vector<std::int64_t>& logits, const WeightCommitments<G>& weights) {
  Transcript tr("zkt.model");
  std::string cfg = c.to_json().dump();
  tr.absorb_bytes("model.config", std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(cfg.data()),
                                                                 cfg.size()));
  tr.absorb_u64("model.seq", tokens.size());
  for (auto t : tokens) tr.absorb_u64("model.token", t);
  for (auto v : logits) tr.absorb_u64("model.logit", static_cast<std::uint64_t>(v));
  for (const auto& w : weights.tensors) w.absorb_into(tr, "model.weight");
  return tr;
}

// Intermediate commitments in forward order.
template <GroupBackend G>
std::vector<const Commitment<G>*> bundle_wires(const ProofBundle<G>& b) {
  std::vector<const Commitment<G>*> out{&b.embedded_com};
  for (const auto& L : b.layers) {
    out.push_back(&L.ln1.output_com());
    out.push_back(&L.q.output_com());
    out.push_back(&L.k.output_com());
    out.push_back(&L.v.output_com());
    out.push_back(&L.scores.output_com());
    out.push_back(&L.attn.attn.output_com);
    out.push_back(&L.context.output_com());
    out.push_back(&L.proj.output_com());
    out.push_back(&L.ln2.output_com());
    out.push_back(&L.up.output_com());
    if (L.gate) out.push_back(&L.gate->output_com());
    if (L.act) out.push_back(&L.act->output_com());
    out.push_back(&L.down.output_com());
  }
  out.push_back(&b.final_ln.output_com());
  out.push_back(&b.head.output_com());
  return out;
}

template <GroupBackend G>
std::vector<const Commitment<G>*> committed_wires(const Committed<G>& embedded,
                                                  const std::vector<LayerCommitted<G>>& layers,
                                                  const LayerNormCommitted<G>& final_ln,
                                                  const RescaleCommitted<G>& head, Activation a) {
  std::vector<const Commitment<G>*> out{&embedded.com};
  for (const auto& L : layers) {
    out.push_back(&L.ln1.output.quotient.com);
    out.push_back(&L.q.quotient.com);
    out.push_back(&L.k.quotient.com);
    out.push_back(&L.v.quotient.com);
    out.push_back(&L.scores.quotient.com);
    out.push_back(&L.attn.output.com);
    out.push_back(&L.context.quotient.com);
    out.push_back(&L.proj.quotient.com);
    out.push_back(&L.ln2.output.quotient.com);
    out.push_back(a == Activation::relu ? &L.relu_output.com : &L.up.quotient.com);
    if (a == Activation::swiglu) out.push_back(&L.gate.quotient.com);
    if (a != Activation::relu) out.push_back(&L.act.rescale.quotient.com);
    out.push_back(&L.down.quotient.com);
  }
  out.push_back(&final_ln.output.quotient.com);
  out.push_back(&head.quotient.com);
  return out;
}

template <class F>
std::vector<F> one_hot(const std::vector<std::uint32_t>& tokens, std::size_t vocab) {
  std::vector<F> out(tokens.size() * vocab, F::zero());
  for (std::size_t i = 0; i < tokens.size(); ++i) out[i * vocab + tokens[i]] = F::one();
  return out;
}

}  // namespace detail

// ------------------------------------------------------------------ prover

// Proves a given trace, which the caller may have altered (soundness tests).
template <GroupBackend G>
ProofBundle<G> prove_trace(const PublicParams<G>& pp, const ModelTables<G>& tables, const WeightSet& w,
                           const CommittedWeights<G>& cw, const Trace& t, Rng& rng) {
  using F = typename G::Scalar;
  const ModelConfig& c = w.config;
  const ModelOps& ops = t.ops;
  const WeightIndex wi(c);
  const auto& W = cw.tensors;
  const std::size_t seq = t.seq();
  const unsigned ls = log2_exact(seq), lh = log2_exact(c.heads), ld = log2_exact(c.d_model),
                 ldh = log2_exact(c.d_head()), lf = log2_exact(c.d_ff), lv = log2_exact(c.vocab);
  const Activation act = c.activation;

  // Commit every intermediate.
  Committed<G> embedded = commit_hiding<G>(pp, to_field<F>(t.embedded), rng);
  std::vector<LayerCommitted<G>> lc(t.layers.size());
  const Committed<G>* x = &embedded;
  for (std::size_t l = 0; l < t.layers.size(); ++l) {
    const auto& lt = t.layers[l];
    auto& L = lc[l];
    L.input = *x;
    L.ln1 = commit_layernorm<G>(pp, lt.ln1, rng);
    L.q = commit_rescale<G>(pp, lt.q, rng);
    L.k = commit_rescale<G>(pp, lt.k, rng);
    L.v = commit_rescale<G>(pp, lt.v, rng);
    L.scores = commit_rescale<G>(pp, lt.scores, rng);
    L.attn = commit_attention<G>(pp, lt.attn, rng);
    L.context = commit_rescale<G>(pp, lt.context, rng);
    L.proj = commit_rescale<G>(pp, lt.proj, rng);
    L.mid = combine(L.input, F::one(), L.proj.quotient);
    L.ln2 = commit_layernorm<G>(pp, lt.ln2, rng);
    if (act == Activation::relu) {
      L.up = commit_rescale<G>(pp, lt.relu.rescale, rng);
      L.relu_output = commit_hiding<G>(pp, to_field<F>(lt.relu.output), rng);
    } else {
      L.up = commit_rescale<G>(pp, lt.up, rng);
      if (act == Activation::swiglu) L.gate = commit_rescale<G>(pp, lt.gate, rng);
      L.act = commit_gated<G>(pp, lt.act, rng);
    }
    L.down = commit_rescale<G>(pp, lt.down, rng);
    L.output = combine(L.mid, F::one(), L.down.quotient);
    x = &L.output;
  }
  LayerNormCommitted<G> final_ln = commit_layernorm<G>(pp, t.final_ln, rng);
  RescaleCommitted<G> head;
  head.quotient = commit_public<G>(pp, to_field<F>(t.head.quotient));
  for (const auto& d : t.head.digits) head.digits.push_back(commit_hiding<G>(pp, to_field<F>(d), rng));
  for (const auto& d : t.head.quotient_digits) {
    head.quotient_digits.push_back(commit_hiding<G>(pp, to_field<F>(d), rng));
  }

  Transcript tr = detail::model_transcript<G>(c, t.tokens, t.logits(), cw.commitments());
  for (const auto* wire : detail::committed_wires<G>(embedded, lc, final_ln, head, act)) {
    detail::absorb_wire<G>(tr, *wire);
  }

  ProofBundle<G> b;
  b.embedded_com = embedded.com;
  b.head = prove_contraction<G>(
      pp, ops.linear, tables.linear, head, nullptr, {}, final_ln.output.quotient, W[wi.head],
      [&](std::span<const F> r) { return detail::linear_plan<F>(r, ls, ld); }, tr, rng);
  b.final_ln = layernorm_prove<G>(pp, ops.layernorm, tables.layernorm, *x, W[wi.final_gain], W[wi.final_bias],
                                  final_ln, tr, rng);
  b.layers.resize(t.layers.size());
  for (std::size_t l = t.layers.size(); l-- > 0;) {
    const auto& lt = t.layers[l];
    const auto& L = lc[l];
    const auto& Wl = wi.layers[l];
    auto& P = b.layers[l];
    auto linear = [&](unsigned log_inner) {
      return [&, log_inner](std::span<const F> r) { return detail::linear_plan<F>(r, ls, log_inner); };
    };
    const Committed<G>& hidden = L.hidden(act);
    P.down = prove_contraction<G>(pp, ops.linear, tables.linear, L.down, nullptr, {}, hidden, W[Wl.w_down],
                                  linear(lf), tr, rng);
    if (act != Activation::relu) {
      const Committed<G>* gate = act == Activation::swiglu ? &L.gate.quotient : nullptr;
      P.act = gated_prove<G>(pp, *ops.gated, *tables.gated, L.up.quotient, gate, lt.act, L.act, tr, rng);
      if (act == Activation::swiglu) {
        P.gate = prove_contraction<G>(pp, ops.linear, tables.linear, L.gate, nullptr, {}, L.ln2.output.quotient,
                                      W[Wl.w_gate], linear(ld), tr, rng);
      }
      P.up = prove_contraction<G>(pp, ops.linear, tables.linear, L.up, nullptr, {}, L.ln2.output.quotient,
                                  W[Wl.w_up], linear(ld), tr, rng);
    } else {
      P.up = prove_contraction<G>(pp, ops.linear, tables.linear, L.up, &L.relu_output, tables.relu_map(),
                                  L.ln2.output.quotient, W[Wl.w_up], linear(ld), tr, rng);
    }
    P.ln2 = layernorm_prove<G>(pp, ops.layernorm, tables.layernorm, L.mid, W[Wl.ln2_gain], W[Wl.ln2_bias], L.ln2,
                               tr, rng);
    P.proj = prove_contraction<G>(pp, ops.linear, tables.linear, L.proj, nullptr, {}, L.context.quotient, W[Wl.wo],
                                  linear(ld), tr, rng);
    P.context = prove_contraction<G>(
        pp, ops.context, tables.context, L.context, nullptr, {}, L.attn.output, L.v.quotient,
        [&](std::span<const F> r) { return detail::context_plan<F>(r, lh, ls); }, tr, rng);
    {
      auto [ap, claim] = zkattn_prove<G>(pp, ops.attn, tables.attn, lt.attn, L.attn, tr, rng);
      P.attn.attn = std::move(ap);
      P.attn.logits_eval = prove_eval<G>(pp, L.scores.quotient, claim.point, tr, rng);
    }
    P.scores = prove_contraction<G>(
        pp, ops.scores, tables.scores, L.scores, nullptr, {}, L.q.quotient, L.k.quotient,
        [&](std::span<const F> r) { return detail::scores_plan<F>(r, lh, ls, ldh); }, tr, rng);
    P.v = prove_contraction<G>(pp, ops.linear, tables.linear, L.v, nullptr, {}, L.ln1.output.quotient, W[Wl.wv],
                               linear(ld), tr, rng);
    P.k = prove_contraction<G>(pp, ops.linear, tables.linear, L.k, nullptr, {}, L.ln1.output.quotient, W[Wl.wk],
                               linear(ld), tr, rng);
    P.q = prove_contraction<G>(pp, ops.linear, tables.linear, L.q, nullptr, {}, L.ln1.output.quotient, W[Wl.wq],
                               linear(ld), tr, rng);
    P.ln1 = layernorm_prove<G>(pp, ops.layernorm, tables.layernorm, L.input, W[Wl.ln1_gain], W[Wl.ln1_bias], L.ln1,
                               tr, rng);
  }

  {
    std::vector<F> r = tr.challenges<F>("embed.r", ls + ld);
    std::span<const F> rs(r);
    b.embed.output_eval = prove_eval<G>(pp, embedded, rs, tr, rng);
    const unsigned pos_pad = log2_exact(c.max_seq) - ls;
    std::vector<F> pos_point(pos_pad, F::zero());
    pos_point.insert(pos_point.end(), r.begin(), r.end());
    b.embed.position_eval = prove_eval<G>(pp, W[wi.position], pos_point, tr, rng);
    auto oh = detail::one_hot<F>(t.tokens, c.vocab);
    auto [sc, claims] = prove_matmul<F>(oh, W[wi.embedding].data, MatmulDims{ls, lv, ld}, rs.subspan(0, ls),
                                        rs.subspan(ls), tr);
    b.embed.sumcheck = std::move(sc);
    b.embed.embedding_eval = prove_eval<G>(pp, W[wi.embedding], claims.b_point, tr, rng);
  }
  (void)lv;
  return b;
}

// Checks the weights against their commitment, runs the forward pass and
// proves it. Throws BindingError when the weights do not match.
template <GroupBackend G>
std::pair<Trace, ProofBundle<G>> zkllm_prove(const PublicParams<G>& pp, const ModelTables<G>& tables,
                                             const WeightSet& w, const CommittedWeights<G>& cw,
                                             const WeightCommitments<G>& expected,
                                             const std::vector<std::uint32_t>& tokens, Rng& rng) {
  if (!(cw.commitments() == expected)) throw BindingError("weights do not match their commitment");
  Trace t = forward(w, tokens);
  ProofBundle<G> b = prove_trace<G>(pp, tables, w, cw, t, rng);
  return {std::move(t), std::move(b)};
}

// ---------------------------------------------------------------- verifier

template <GroupBackend G>
bool zkllm_verify(const PublicParams<G>& pp, const ModelTables<G>& tables, const ModelConfig& c,
                  const std::vector<std::uint32_t>& tokens, const std::vector<std::int64_t>& logits,
                  const WeightCommitments<G>& weights, const ProofBundle<G>& b) {
  using F = typename G::Scalar;
  const ModelOps ops = derive_ops(c, tokens.size());
  const WeightIndex wi(c);
  if (weights.tensors.size() != wi.count || b.layers.size() != c.layers) return false;
  const auto& W = weights.tensors;
  const std::size_t seq = tokens.size();
  if (logits.size() != seq * c.vocab) return false;
  for (auto t : tokens) {
    if (t >= c.vocab) return false;
  }
  const unsigned ls = log2_exact(seq), lh = log2_exact(c.heads), ld = log2_exact(c.d_model),
                 ldh = log2_exact(c.d_head()), lf = log2_exact(c.d_ff), lv = log2_exact(c.vocab);
  const Activation act = c.activation;
  for (const auto& L : b.layers) {
    if (L.act.has_value() != (act != Activation::relu) || L.gate.has_value() != (act == Activation::swiglu)) {
      return false;
    }
    if (L.up.rescale.mapped_com.has_value() != (act == Activation::relu)) return false;
  }
  // Every other fragment output is a plain quotient.
  if (b.head.rescale.mapped_com) return false;

  if (!(b.head.rescale.quotient_com == commit_public<G>(pp, to_field<F>(logits)).com)) return false;
  if (b.embedded_com.log_size != ls + ld) return false;

  Transcript tr = detail::model_transcript<G>(c, tokens, logits, weights);
  for (const auto* wire : detail::bundle_wires<G>(b)) detail::absorb_wire<G>(tr, *wire);

  // Residual stream commitments follow from the wires by homomorphism.
  std::vector<Commitment<G>> inputs(c.layers + 1), mids(c.layers);
  inputs[0] = b.embedded_com;
  for (std::size_t l = 0; l < c.layers; ++l) {
    const auto& proj = b.layers[l].proj.output_com();
    const auto& down = b.layers[l].down.output_com();
    if (proj.log_size != inputs[l].log_size || down.log_size != inputs[l].log_size) return false;
    mids[l] = inputs[l] + proj;
    inputs[l + 1] = mids[l] + down;
  }

  auto linear = [&](unsigned log_inner) {
    return [=](std::span<const F> r) { return detail::linear_plan<F>(r, ls, log_inner); };
  };
  const unsigned act_size = ls + ld;
  if (!verify_contraction<G>(pp, ops.linear, tables.linear, ls + lv, {}, b.final_ln.output_com(), W[wi.head],
                             linear(ld), b.head, tr)) {
    return false;
  }
  if (!layernorm_verify<G>(pp, ops.layernorm, tables.layernorm, inputs[c.layers], W[wi.final_gain],
                           W[wi.final_bias], b.final_ln, tr)) {
    return false;
  }
  for (std::size_t l = c.layers; l-- > 0;) {
    const auto& P = b.layers[l];
    const auto& Wl = wi.layers[l];
    const unsigned hidden_size = ls + lf;
    if (!verify_contraction<G>(pp, ops.linear, tables.linear, act_size, {}, P.hidden_com(), W[Wl.w_down],
                               linear(lf), P.down, tr)) {
      return false;
    }
    if (act != Activation::relu) {
      const Commitment<G>* gate = P.gate ? &P.gate->output_com() : nullptr;
      if (!gated_verify<G>(pp, *ops.gated, *tables.gated, P.up.output_com(), gate, *P.act, tr)) return false;
      if (P.gate && !verify_contraction<G>(pp, ops.linear, tables.linear, hidden_size, {}, P.ln2.output_com(),
                                           W[Wl.w_gate], linear(ld), *P.gate, tr)) {
        return false;
      }
      if (!verify_contraction<G>(pp, ops.linear, tables.linear, hidden_size, {}, P.ln2.output_com(), W[Wl.w_up],
                                 linear(ld), P.up, tr)) {
        return false;
      }
    } else if (!verify_contraction<G>(pp, ops.linear, tables.linear, hidden_size, tables.relu_map(),
                                      P.ln2.output_com(), W[Wl.w_up], linear(ld), P.up, tr)) {
      return false;
    }
    if (!layernorm_verify<G>(pp, ops.layernorm, tables.layernorm, mids[l], W[Wl.ln2_gain], W[Wl.ln2_bias], P.ln2,
                             tr)) {
      return false;
    }
    if (!verify_contraction<G>(pp, ops.linear, tables.linear, act_size, {}, P.context.output_com(), W[Wl.wo],
                               linear(ld), P.proj, tr)) {
      return false;
    }
    if (!verify_contraction<G>(
            pp, ops.context, tables.context, act_size, {}, P.attn.attn.output_com, P.v.output_com(),
            [=](std::span<const F> r) { return detail::context_plan<F>(r, lh, ls); }, P.context, tr)) {
      return false;
    }
    {
      auto claim = zkattn_verify<G>(pp, ops.attn, tables.attn, c.heads * seq, seq, P.attn.attn, tr);
      if (!claim || P.attn.logits_eval.value != claim->value) return false;
      if (!verify_eval<G>(pp, P.scores.output_com(), claim->point, P.attn.logits_eval, tr)) return false;
    }
    if (!verify_contraction<G>(
            pp, ops.scores, tables.scores, lh + 2 * ls, {}, P.q.output_com(), P.k.output_com(),
            [=](std::span<const F> r) { return detail::scores_plan<F>(r, lh, ls, ldh); }, P.scores, tr)) {
      return false;
    }
    for (const auto* frag : {&P.v, &P.k, &P.q}) {
      const std::size_t widx = frag == &P.v ? Wl.wv : frag == &P.k ? Wl.wk : Wl.wq;
      if (!verify_contraction<G>(pp, ops.linear, tables.linear, act_size, {}, P.ln1.output_com(), W[widx],
                                 linear(ld), *frag, tr)) {
        return false;
      }
    }
    if (!layernorm_verify<G>(pp, ops.layernorm, tables.layernorm, inputs[l], W[Wl.ln1_gain], W[Wl.ln1_bias], P.ln1,
                             tr)) {
      return false;
    }
  }

  {
    std::vector<F> r = tr.challenges<F>("embed.r", ls + ld);
    std::span<const F> rs(r);
    if (!verify_eval<G>(pp, b.embedded_com, rs, b.embed.output_eval, tr)) return false;
    const unsigned pos_pad = log2_exact(c.max_seq) - ls;
    std::vector<F> pos_point(pos_pad, F::zero());
    pos_point.insert(pos_point.end(), r.begin(), r.end());
    if (!verify_eval<G>(pp, W[wi.position], pos_point, b.embed.position_eval, tr)) return false;
    auto claims = verify_matmul<F>(MatmulDims{ls, lv, ld}, rs.subspan(0, ls), rs.subspan(ls),
                                   b.embed.output_eval.value - b.embed.position_eval.value, b.embed.sumcheck, tr);
    if (!claims) return false;
    if (claims->a_value != mle_evaluate<F>(detail::one_hot<F>(tokens, c.vocab), claims->a_point)) return false;
    if (b.embed.embedding_eval.value != claims->b_value) return false;
    if (!verify_eval<G>(pp, W[wi.embedding], claims->b_point, b.embed.embedding_eval, tr)) return false;
  }
  return true;
}

}  // namespace zkt
