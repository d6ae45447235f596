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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

namespace zkt {

// Binary artifacts share one container: "ZKT1", version, kind, then
// length-prefixed sections.
enum class FileKind : std::uint32_t { public_params = 1, commitment = 2, blinders = 3, proof = 4 };

inline constexpr std::uint32_t kFileVersion = 1;

std::vector<std::uint8_t> pack_sections(FileKind kind, const std::vector<std::vector<std::uint8_t>>& sections);
// Throws DecodeError on a bad magic, version, kind or framing.
std::vector<std::vector<std::uint8_t>> unpack_sections(FileKind kind, std::span<const std::uint8_t> bytes);

// Both throw std::ios_base::failure.
std::vector<std::uint8_t> read_binary(const std::filesystem::path& path);
void write_binary(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

// Throws std::ios_base::failure when unreadable, DecodeError when not JSON.
nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

// {"tokens": [...]}
std::vector<std::uint32_t> load_prompt(const std::filesystem::path& path);
void save_prompt(const std::filesystem::path& path, const std::vector<std::uint32_t>& tokens);

// Proved logits plus the greedy tokens derived from them.
struct ModelOutput {
  std::vector<std::int64_t> logits;
  std::vector<std::uint32_t> tokens;
};

ModelOutput load_output(const std::filesystem::path& path);
void save_output(const std::filesystem::path& path, const ModelOutput& out);

}  // namespace zkt
