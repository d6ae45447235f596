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


#include "zkt/cli/commands.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zkt/model/artifacts.hpp"
#include "zkt/oracle/selfcheck.hpp"

namespace zkt {
namespace {
using B = DefaultBackend;
namespace fs = std::filesystem;

constexpr int kAccept = kExitAccept, kReject = kExitReject, kUsage = kExitUsage, kIo = kExitIo;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> parse_hex(const std::string& hex) {
  std::string h = hex.rfind("0x", 0) == 0 ? hex.substr(2) : hex;
  if (h.empty() || h.size() % 2 != 0) throw UsageError("seed must be an even number of hex digits");
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < h.size(); i += 2) {
    auto nib = [&](char ch) -> int {
      if (ch >= '0' && ch <= '9') return ch - '0';
      if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
      if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
      throw UsageError("seed is not hex: " + hex);
    };
    out.push_back(static_cast<std::uint8_t>(nib(h[i]) * 16 + nib(h[i + 1])));
  }
  return out;
}

void apply_preset(ModelConfig& c, const std::string& preset) {
  if (preset.empty()) return;
  if (preset != "paper-k5l3") throw UsageError("unknown preset: " + preset);
  c.attn_segments = 5;
  c.attn_low_segments = 3;
  c.attn_top_segments = 1;
  c.attn_budgets.assign(5, std::int64_t{1} << 16);
}

class StageClock {
 public:
  explicit StageClock(bool enabled) : enabled_(enabled), last_(std::chrono::steady_clock::now()) {}

  void mark(const char* stage) {
    auto now = std::chrono::steady_clock::now();
    if (enabled_) {
      std::chrono::duration<double, std::milli> ms = now - last_;
      std::cerr << "[trace] " << stage << " " << std::fixed << std::setprecision(1) << ms.count() << " ms\n";
    }
    last_ = now;
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point last_;
};

fs::path default_params_path(const fs::path& pp) {
  fs::path p = pp;
  return p.replace_extension(".params.json");
}

fs::path blinders_path(const fs::path& commitment) {
  fs::path p = commitment;
  p += ".blind";
  return p;
}

// ---------------------------------------------------------------- commands

struct SetupArgs {
  std::string config, seed, preset, out = "zkt.pp", params;
};

int cmd_setup(const SetupArgs& a) {
  ModelConfig c;
  if (!a.config.empty()) {
    auto j = read_json(a.config);
    try {
      c = ModelConfig::from_json(j);
    } catch (const nlohmann::json::exception& e) {
      throw ParamError(std::string("config: ") + e.what());
    }
  }
  apply_preset(c, a.preset);
  c.validate();
  // Attention parameters are checked for the longest prompt up front.
  ModelOps ops = derive_ops(c, c.max_seq);
  auto setup = model_setup<B>(c, parse_hex(a.seed));
  write_binary(a.out, encode_setup(setup));

  nlohmann::json params = {{"config", c.to_json()},
                           {"max_log_dim", setup.pp.max_log_dim},
                           {"attention", ops.attn.describe()},
                           {"attention_radices", ops.attn.radices},
                           {"attention_error_bound", ops.attn.eps_attn},
                           {"row_sum_tolerance", ops.attn.tolerance}};
  fs::path params_path = a.params.empty() ? default_params_path(a.out) : fs::path(a.params);
  write_json(params_path, params);
  std::cout << "wrote " << a.out << " and " << params_path.string() << "\n";
  return kAccept;
}

struct CommitArgs {
  std::string weights, pp, out, blinders, seed;
};

int cmd_commit(const CommitArgs& a) {
  auto setup = decode_setup<B>(read_binary(a.pp));
  WeightSet w = WeightSet::load(a.weights);
  if (!(w.config.to_json() == setup.config.to_json())) {
    throw ParamError("weights were not produced for the configuration in the public parameters");
  }
  fs::path out = a.out.empty() ? fs::path(a.weights).replace_extension(".zkc") : fs::path(a.out);
  CommittedWeights<B> cw;
  if (!a.blinders.empty()) {
    cw = zkllm_commit<B>(setup.pp, w, decode_blinders<B>(read_binary(a.blinders)));
  } else {
    Rng rng = a.seed.empty() ? Rng::from_os() : Rng(sha256(parse_hex(a.seed)));
    cw = zkllm_commit<B>(setup.pp, w, rng);
  }
  write_binary(out, encode_commitment(w.config, cw.commitments()));
  fs::path sidecar = a.blinders.empty() ? blinders_path(out) : fs::path(a.blinders);
  if (a.blinders.empty()) write_binary(sidecar, encode_blinders(cw));
  std::cout << "wrote " << out.string() << " (blinders: " << sidecar.string() << ")\n";
  return kAccept;
}

struct ProveArgs {
  std::string weights, prompt, pp, commitment, blinders, out, output, seed;
  bool emit_trace = false;
};

int cmd_prove(const ProveArgs& a) {
  StageClock clock(a.emit_trace);
  auto setup = decode_setup<B>(read_binary(a.pp));
  WeightSet w = WeightSet::load(a.weights);
  auto tokens = load_prompt(a.prompt);
  fs::path com_path = a.commitment.empty() ? fs::path(a.weights).replace_extension(".zkc") : fs::path(a.commitment);
  auto [com_config, expected] = decode_commitment<B>(read_binary(com_path));
  fs::path blind = a.blinders.empty() ? blinders_path(com_path) : fs::path(a.blinders);
  auto blinders = decode_blinders<B>(read_binary(blind));
  clock.mark("load");

  if (!(w.config.to_json() == setup.config.to_json()) || !(com_config.to_json() == setup.config.to_json())) {
    throw BindingError("weights, commitment and public parameters disagree on the model configuration");
  }
  const ModelOps ops = derive_ops(w.config, tokens.size());
  auto tables = build_model_tables<B>(setup.pp, w.config, ops);
  clock.mark("tables");

  auto cw = zkllm_commit<B>(setup.pp, w, std::move(blinders));
  if (!(cw.commitments() == expected)) throw BindingError("weights do not match their commitment");
  clock.mark("binding");

  Trace trace = forward(w, tokens);
  clock.mark("forward");

  Rng rng = a.seed.empty() ? Rng::from_os() : Rng(sha256(parse_hex(a.seed)));
  ProofBundle<B> bundle = prove_trace<B>(setup.pp, tables, w, cw, trace, rng);
  clock.mark("prove");

  auto bytes = encode_proof(ProofFile<B>{w.config, tokens, std::move(bundle)});
  write_binary(a.out, bytes);
  fs::path output = a.output.empty() ? fs::path(a.out).replace_extension(".output.json") : fs::path(a.output);
  save_output(output, ModelOutput{trace.logits(), greedy_tokens(trace.logits(), w.config.vocab)});
  clock.mark("write");
  std::cout << "wrote " << a.out << " (" << bytes.size() << " bytes) and " << output.string() << "\n";
  return kAccept;
}

struct VerifyArgs {
  std::string prompt, output, commitment, proof, pp;
};

int cmd_verify(const VerifyArgs& a) {
  auto setup = decode_setup<B>(read_binary(a.pp));
  auto tokens = load_prompt(a.prompt);
  auto out = load_output(a.output);
  auto com_bytes = read_binary(a.commitment);
  auto proof_bytes = read_binary(a.proof);

  auto reject = [](const std::string& why) {
    std::cout << "REJECT: " << why << "\n";
    return kReject;
  };
  try {
    auto [com_config, com] = decode_commitment<B>(com_bytes);
    auto proof = decode_proof<B>(proof_bytes);
    const auto cfg = setup.config.to_json();
    if (!(com_config.to_json() == cfg) || !(proof.config.to_json() == cfg)) {
      return reject("configuration mismatch");
    }
    if (proof.tokens != tokens) return reject("proof is for a different prompt");
    const ModelConfig& c = setup.config;
    if (tokens.empty() || tokens.size() > c.max_seq || (tokens.size() & (tokens.size() - 1)) != 0) {
      return reject("prompt length is not a supported power of two");
    }
    if (out.logits.size() != tokens.size() * c.vocab) return reject("output has the wrong shape");
    if (greedy_tokens(out.logits, c.vocab) != out.tokens) return reject("output tokens do not follow from the logits");
    auto tables = build_model_tables<B>(setup.pp, c, derive_ops(c, tokens.size()));
    if (!zkllm_verify<B>(setup.pp, tables, c, tokens, out.logits, com, proof.bundle)) {
      return reject("proof does not verify");
    }
  } catch (const DecodeError& e) {
    return reject(std::string("malformed artifact: ") + e.what());
  } catch (const Error& e) {
    return reject(e.what());
  }
  std::cout << "ACCEPT\n";
  return kAccept;
}

struct InitArgs {
  std::string config, out;
  std::uint64_t seed = 1;
};

int cmd_init_weights(const InitArgs& a) {
  ModelConfig c;
  if (!a.config.empty()) c = ModelConfig::from_json(read_json(a.config));
  WeightSet::random(c, a.seed).save(a.out);
  std::cout << "wrote " << a.out << "\n";
  return kAccept;
}

int cmd_selfcheck(bool quick) {
  bool ok = true;
  for (const auto& s : run_selfcheck(quick)) {
    std::cout << s.name << ": " << s.passed << " passed, " << s.failed << " failed\n";
    for (const auto& f : s.failures) std::cout << "  FAIL " << f << "\n";
    ok = ok && s.ok();
  }
  return ok ? kAccept : kReject;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"zero-knowledge proofs of transformer inference"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: ZKT_THREADS or 1)")->check(CLI::PositiveNumber);

  SetupArgs sa;
  auto* setup = app.add_subcommand("setup", "generate public parameters");
  setup->add_option("--config", sa.config, "model configuration JSON");
  setup->add_option("--seed", sa.seed, "hex seed for the generators")->required();
  setup->add_option("--preset", sa.preset, "attention preset (paper-k5l3)");
  setup->add_option("--out", sa.out, "public parameter file");
  setup->add_option("--params", sa.params, "derived parameter summary (JSON)");

  CommitArgs ca;
  auto* commit = app.add_subcommand("commit", "commit to model weights");
  commit->add_option("--weights", ca.weights)->required();
  commit->add_option("--pp", ca.pp)->required();
  commit->add_option("--out", ca.out, "commitment file (default: <weights>.zkc)");
  commit->add_option("--blinders", ca.blinders, "reuse an existing blinder sidecar");
  commit->add_option("--seed", ca.seed, "hex seed for fresh blinders");

  ProveArgs pa;
  auto* prove = app.add_subcommand("prove", "run the model and prove the result");
  prove->add_option("--weights", pa.weights)->required();
  prove->add_option("--prompt", pa.prompt)->required();
  prove->add_option("--pp", pa.pp)->required();
  prove->add_option("--out", pa.out, "proof file")->required();
  prove->add_option("--commitment", pa.commitment, "commitment file (default: <weights>.zkc)");
  prove->add_option("--blinders", pa.blinders, "blinder sidecar (default: <commitment>.blind)");
  prove->add_option("--output", pa.output, "output JSON (default: <out>.output.json)");
  prove->add_option("--seed", pa.seed, "hex seed for proof randomness");
  prove->add_flag("--emit-trace", pa.emit_trace, "print per-stage timing to stderr");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check a proof");
  verify->add_option("--prompt", va.prompt)->required();
  verify->add_option("--output", va.output)->required();
  verify->add_option("--commitment", va.commitment)->required();
  verify->add_option("--proof", va.proof)->required();
  verify->add_option("--pp", va.pp)->required();

  InitArgs ia;
  auto* init = app.add_subcommand("init-weights", "write randomly initialized weights");
  init->add_option("--config", ia.config, "model configuration JSON");
  init->add_option("--seed", ia.seed, "integer seed");
  init->add_option("--out", ia.out)->required();

  bool quick = false;
  auto* selfcheck = app.add_subcommand("selfcheck", "cross-check against reference implementations");
  selfcheck->add_flag("--quick", quick);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (threads > 0) set_thread_count(static_cast<std::size_t>(threads));

  try {
    if (*setup) return cmd_setup(sa);
    if (*commit) return cmd_commit(ca);
    if (*prove) return cmd_prove(pa);
    if (*verify) return cmd_verify(va);
    if (*init) return cmd_init_weights(ia);
    if (*selfcheck) return cmd_selfcheck(quick);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParamError& e) {
    std::cerr << "ParamError: " << e.what() << "\n";
    return kUsage;
  } catch (const ShapeError& e) {
    std::cerr << "ShapeError: " << e.what() << "\n";
    return kUsage;
  } catch (const BindingError& e) {
    std::cerr << "BindingError: " << e.what() << "\n";
    return kReject;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const DecodeError& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kReject;
  }
  return kUsage;
}

}  // namespace zkt
