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


#include "zkt/model/files.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>

#include "zkt/algebra/bytes.hpp"
#include "zkt/common/errors.hpp"

namespace zkt {

namespace {

constexpr std::uint8_t kMagic[4] = {'Z', 'K', 'T', '1'};

template <class T>
std::vector<T> json_list(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_array()) {
    throw DecodeError(std::string("expected an object with a \"") + key + "\" array");
  }
  try {
    return j[key].get<std::vector<T>>();
  } catch (const nlohmann::json::exception& e) {
    throw DecodeError(std::string("bad \"") + key + "\" entry: " + e.what());
  }
}

}  // namespace

std::vector<std::uint8_t> pack_sections(FileKind kind, const std::vector<std::vector<std::uint8_t>>& sections) {
  ByteWriter w;
  w.raw(kMagic);
  w.u32(kFileVersion);
  w.u32(static_cast<std::uint32_t>(kind));
  w.u32(static_cast<std::uint32_t>(sections.size()));
  for (const auto& s : sections) w.blob(s);
  return w.take();
}

std::vector<std::vector<std::uint8_t>> unpack_sections(FileKind kind, std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  auto magic = r.take(4);
  if (!std::equal(magic.begin(), magic.end(), kMagic)) throw DecodeError("not a ZKT1 file");
  if (r.u32() != kFileVersion) throw DecodeError("unsupported file version");
  if (r.u32() != static_cast<std::uint32_t>(kind)) throw DecodeError("unexpected file kind");
  std::uint32_t n = r.u32();
  if (n > 64) throw DecodeError("too many sections");
  std::vector<std::vector<std::uint8_t>> out;
  for (std::uint32_t i = 0; i < n; ++i) {
    auto s = r.blob();
    out.emplace_back(s.begin(), s.end());
  }
  r.expect_done();
  return out;
}

std::vector<std::uint8_t> read_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  std::vector<std::uint8_t> out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw std::ios_base::failure("read failed: " + path.string());
  return out;
}

void write_binary(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::ios_base::failure("write failed: " + path.string());
}

nlohmann::json read_json(const std::filesystem::path& path) {
  auto bytes = read_binary(path);
  auto j = nlohmann::json::parse(bytes.begin(), bytes.end(), nullptr, false);
  if (j.is_discarded()) throw DecodeError(path.string() + " is not valid JSON");
  return j;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::string s = j.dump(2) + "\n";
  write_binary(path, std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

std::vector<std::uint32_t> load_prompt(const std::filesystem::path& path) {
  return json_list<std::uint32_t>(read_json(path), "tokens");
}

void save_prompt(const std::filesystem::path& path, const std::vector<std::uint32_t>& tokens) {
  write_json(path, nlohmann::json{{"tokens", tokens}});
}

ModelOutput load_output(const std::filesystem::path& path) {
  auto j = read_json(path);
  return ModelOutput{json_list<std::int64_t>(j, "logits"), json_list<std::uint32_t>(j, "tokens")};
}

void save_output(const std::filesystem::path& path, const ModelOutput& out) {
  write_json(path, nlohmann::json{{"tokens", out.tokens}, {"logits", out.logits}});
}

}  // namespace zkt
