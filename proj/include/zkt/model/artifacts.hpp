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

#include <string>
#include <vector>

#include "zkt/model/files.hpp"
#include "zkt/model/prover.hpp"

namespace zkt {

namespace detail {

inline std::vector<std::uint8_t> config_bytes(const ModelConfig& c) {
  std::string s = c.to_json().dump();
  return {s.begin(), s.end()};
}

inline ModelConfig config_from_bytes(const std::vector<std::uint8_t>& b) {
  auto j = nlohmann::json::parse(b.begin(), b.end(), nullptr, false);
  if (j.is_discarded()) throw DecodeError("embedded config is not JSON");
  try {
    return ModelConfig::from_json(j);
  } catch (const ParamError& e) {
    throw DecodeError(std::string("embedded config: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw DecodeError(std::string("embedded config: ") + e.what());
  }
}

inline void expect_sections(const std::vector<std::vector<std::uint8_t>>& s, std::size_t n) {
  if (s.size() != n) throw DecodeError("unexpected section count");
}

}  // namespace detail

template <GroupBackend G>
struct ModelSetup {
  ModelConfig config;
  PublicParams<G> pp;
};

template <GroupBackend G>
ModelSetup<G> model_setup(const ModelConfig& c, std::span<const std::uint8_t> seed) {
  c.validate();
  return ModelSetup<G>{c, PublicParams<G>::keygen(required_log_dim(c), seed)};
}

template <GroupBackend G>
std::vector<std::uint8_t> encode_setup(const ModelSetup<G>& s) {
  ByteWriter w;
  s.pp.write(w);
  return pack_sections(FileKind::public_params, {detail::config_bytes(s.config), w.take()});
}

template <GroupBackend G>
ModelSetup<G> decode_setup(std::span<const std::uint8_t> bytes) {
  auto s = unpack_sections(FileKind::public_params, bytes);
  detail::expect_sections(s, 2);
  ModelSetup<G> out{detail::config_from_bytes(s[0]), {}};
  ByteReader r(s[1]);
  out.pp = PublicParams<G>::read(r);
  r.expect_done();
  if (out.pp.max_log_dim < required_log_dim(out.config)) throw DecodeError("public parameters too small for the model");
  return out;
}

template <GroupBackend G>
std::vector<std::uint8_t> encode_commitment(const ModelConfig& c, const WeightCommitments<G>& com) {
  ByteWriter w;
  com.write(w);
  return pack_sections(FileKind::commitment, {detail::config_bytes(c), w.take()});
}

template <GroupBackend G>
std::pair<ModelConfig, WeightCommitments<G>> decode_commitment(std::span<const std::uint8_t> bytes) {
  auto s = unpack_sections(FileKind::commitment, bytes);
  detail::expect_sections(s, 2);
  ModelConfig c = detail::config_from_bytes(s[0]);
  ByteReader r(s[1]);
  auto com = WeightCommitments<G>::read(r);
  r.expect_done();
  return {c, std::move(com)};
}

template <GroupBackend G>
std::vector<std::uint8_t> encode_blinders(const CommittedWeights<G>& cw) {
  ByteWriter w;
  cw.write_blinders(w);
  return pack_sections(FileKind::blinders, {w.take()});
}

template <GroupBackend G>
std::vector<std::vector<typename G::Scalar>> decode_blinders(std::span<const std::uint8_t> bytes) {
  auto s = unpack_sections(FileKind::blinders, bytes);
  detail::expect_sections(s, 1);
  ByteReader r(s[0]);
  auto out = read_blinders<typename G::Scalar>(r);
  r.expect_done();
  return out;
}

template <GroupBackend G>
struct ProofFile {
  ModelConfig config;
  std::vector<std::uint32_t> tokens;
  ProofBundle<G> bundle;
};

template <GroupBackend G>
std::vector<std::uint8_t> encode_proof(const ProofFile<G>& p) {
  ByteWriter toks;
  toks.u32(static_cast<std::uint32_t>(p.tokens.size()));
  for (auto t : p.tokens) toks.u32(t);
  ByteWriter body;
  p.bundle.write(body);
  return pack_sections(FileKind::proof, {detail::config_bytes(p.config), toks.take(), body.take()});
}

template <GroupBackend G>
ProofFile<G> decode_proof(std::span<const std::uint8_t> bytes) {
  auto s = unpack_sections(FileKind::proof, bytes);
  detail::expect_sections(s, 3);
  ProofFile<G> out;
  out.config = detail::config_from_bytes(s[0]);
  ByteReader tr(s[1]);
  std::size_t n = tr.count(4);
  for (std::size_t i = 0; i < n; ++i) out.tokens.push_back(tr.u32());
  tr.expect_done();
  ByteReader br(s[2]);
  out.bundle = ProofBundle<G>::read(br, out.config);
  br.expect_done();
  return out;
}

}  // namespace zkt
