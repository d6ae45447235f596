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


#include "zkt/model/weights.hpp"

#include <cmath>
#include <fstream>

#include "zkt/algebra/rng.hpp"

namespace zkt {

namespace {

template <class W, class M>
std::vector<std::pair<std::string, M*>> list_tensors(W& w) {
  std::vector<std::pair<std::string, M*>> out{{"embedding", &w.embedding}, {"position", &w.position}};
  for (std::size_t l = 0; l < w.layers.size(); ++l) {
    auto& L = w.layers[l];
    const std::string p = "layer" + std::to_string(l) + ".";
    out.insert(out.end(), {{p + "ln1.gain", &L.ln1_gain},
                           {p + "ln1.bias", &L.ln1_bias},
                           {p + "wq", &L.wq},
                           {p + "wk", &L.wk},
                           {p + "wv", &L.wv},
                           {p + "wo", &L.wo},
                           {p + "ln2.gain", &L.ln2_gain},
                           {p + "ln2.bias", &L.ln2_bias},
                           {p + "w_up", &L.w_up}});
    if (w.config.activation == Activation::swiglu) out.push_back({p + "w_gate", &L.w_gate});
    out.push_back({p + "w_down", &L.w_down});
  }
  out.insert(out.end(), {{"final.gain", &w.final_gain}, {"final.bias", &w.final_bias}, {"head", &w.head}});
  return out;
}

}  // namespace

std::vector<std::pair<std::string, const IntMatrix*>> WeightSet::tensors() const {
  return list_tensors<const WeightSet, const IntMatrix>(*this);
}

std::vector<std::pair<std::string, IntMatrix*>> WeightSet::tensors() {
  return list_tensors<WeightSet, IntMatrix>(*this);
}

WeightSet WeightSet::zeros(const ModelConfig& c) {
  c.validate();
  const std::size_t d = c.d_model, f = c.d_ff;
  WeightSet w;
  w.config = c;
  w.embedding = IntMatrix(c.vocab, d);
  w.position = IntMatrix(c.max_seq, d);
  for (unsigned l = 0; l < c.layers; ++l) {
    LayerWeights L;
    L.ln1_gain = L.ln1_bias = L.ln2_gain = L.ln2_bias = IntMatrix(1, d);
    L.wq = L.wk = L.wv = L.wo = IntMatrix(d, d);
    L.w_up = IntMatrix(d, f);
    if (c.activation == Activation::swiglu) L.w_gate = IntMatrix(d, f);
    L.w_down = IntMatrix(f, d);
    w.layers.push_back(std::move(L));
  }
  w.final_gain = w.final_bias = IntMatrix(1, d);
  w.head = IntMatrix(d, c.vocab);
  return w;
}

WeightSet WeightSet::random(const ModelConfig& c, std::uint64_t seed) {
  WeightSet w = zeros(c);
  Rng rng(seed);
  const double g = static_cast<double>(c.gamma());
  auto fill = [&](IntMatrix& m, double mean, double sd) {
    for (auto& v : m.data) v = std::llround((mean + sd * rng.normal()) * g);
  };
  fill(w.embedding, 0, 1.0);
  fill(w.position, 0, 0.3);
  const double sd_model = 1.0 / std::sqrt(static_cast<double>(c.d_model));
  const double sd_ff = 1.0 / std::sqrt(static_cast<double>(c.d_ff));
  for (auto& L : w.layers) {
    fill(L.ln1_gain, 1.0, 0.1);
    fill(L.ln1_bias, 0, 0.1);
    fill(L.wq, 0, sd_model);
    fill(L.wk, 0, sd_model);
    fill(L.wv, 0, sd_model);
    fill(L.wo, 0, sd_model);
    fill(L.ln2_gain, 1.0, 0.1);
    fill(L.ln2_bias, 0, 0.1);
    fill(L.w_up, 0, sd_model);
    if (c.activation == Activation::swiglu) fill(L.w_gate, 0, sd_model);
    fill(L.w_down, 0, sd_ff);
  }
  fill(w.final_gain, 1.0, 0.1);
  fill(w.final_bias, 0, 0.1);
  fill(w.head, 0, sd_model);
  return w;
}

void WeightSet::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
  out << config.to_json().dump() << '\n';
  for (const auto& [name, m] : tensors()) {
    for (auto v : m->data) {
      std::uint64_t u = static_cast<std::uint64_t>(v);
      char bytes[8];
      for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((u >> (8 * i)) & 0xff);
      out.write(bytes, 8);
    }
  }
  if (!out) throw std::ios_base::failure("write failed: " + path.string());
}

WeightSet WeightSet::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  std::string header;
  if (!std::getline(in, header)) throw DecodeError("weight file has no header");
  nlohmann::json j = nlohmann::json::parse(header, nullptr, false);
  if (j.is_discarded()) throw DecodeError("weight header is not JSON");
  WeightSet w = zeros(ModelConfig::from_json(j));
  for (auto& [name, m] : w.tensors()) {
    for (auto& v : m->data) {
      unsigned char bytes[8];
      if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw DecodeError("weight file truncated at " + name);
      std::uint64_t u = 0;
      for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
      v = static_cast<std::int64_t>(u);
    }
  }
  if (in.peek() != std::char_traits<char>::eof()) throw DecodeError("trailing bytes in weight file");
  return w;
}

}  // namespace zkt
