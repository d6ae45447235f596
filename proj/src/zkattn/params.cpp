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


#include "zkt/zkattn/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "zkt/common/errors.hpp"

namespace zkt {

namespace {

// Radices for a run of segments whose product must reach need, spread as
// evenly as the per-segment budgets allow.
std::vector<std::int64_t> split_evenly(double need, const std::vector<std::int64_t>& budgets) {
  std::vector<std::int64_t> out;
  double remaining = std::max(need, 1.0);
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    std::size_t left = budgets.size() - i;
    double root = std::pow(remaining, 1.0 / static_cast<double>(left));
    auto r = static_cast<std::int64_t>(std::ceil(root - 1e-9));
    r = std::clamp<std::int64_t>(r, 1, budgets[i]);
    out.push_back(r);
    remaining = std::ceil(remaining / static_cast<double>(r) - 1e-9);
  }
  if (remaining > 1.0) throw ParamError("segment budgets too small for the required input bound");
  return out;
}

}  // namespace

ZkAttnConfig k5l3_config(unsigned head_dim, unsigned row_len) {
  ZkAttnConfig c;
  c.gamma = 1 << 16;
  c.theta = 1 << 16;
  c.head_dim = head_dim;
  c.row_len = row_len;
  c.segments = 5;
  c.top_segments = 1;
  c.low_segments = 3;
  c.budgets.assign(5, 1 << 16);
  return c;
}

double ZkAttnParams::exp_scale() const {
  return static_cast<double>(config.gamma) * std::sqrt(static_cast<double>(config.head_dim)) /
         config.input_multiplier;
}

std::int64_t ZkAttnParams::input_bound() const {
  return cumulative.back() * radices.back();
}

double ZkAttnParams::table_rounding_bound(const std::vector<double>& scales) const {
  double s = exp_scale();
  double prod = 1.0;
  for (unsigned k = first_middle(); k < first_top(); ++k) {
    double span = static_cast<double>(cumulative[k]) * static_cast<double>(radices[k] - 1) / s;
    prod *= 1.0 + std::exp(span) / (2.0 * scales[k]);
  }
  return prod - 1.0;
}

std::int64_t ZkAttnParams::segment_output(unsigned k, std::int64_t x) const {
  if (is_top(k)) return x == 0 ? 1 : 0;
  if (!is_middle(k)) return 1;
  double v = segment_scale[k] * std::exp(-static_cast<double>(cumulative[k]) * static_cast<double>(x) / exp_scale());
  return static_cast<std::int64_t>(std::nearbyint(v));
}

std::string ZkAttnParams::describe() const {
  std::ostringstream os;
  os << "K=" << config.segments << " L=" << config.low_segments << " M=" << config.top_segments << " radices=[";
  for (std::size_t k = 0; k < radices.size(); ++k) os << (k ? "," : "") << radices[k];
  os << "] scales=[";
  for (std::size_t k = 0; k < segment_scale.size(); ++k) os << (k ? "," : "") << segment_scale[k];
  os << "] B_L=" << low_bound() << " B_KM=" << top_bound() << " eps=" << eps_attn << " E=" << tolerance;
  return os.str();
}

ZkAttnParams derive_params(const ZkAttnConfig& config) {
  const unsigned K = config.segments, M = config.top_segments, L = config.low_segments;
  if (K == 0 || M == 0 || M + L >= K) throw ParamError("need at least one top and one middle segment");
  if (config.budgets.size() != K) throw ParamError("one radix budget per segment required");
  for (auto b : config.budgets) {
    if (b < 1) throw ParamError("radix budgets must be positive");
  }
  if (config.gamma <= 0 || config.theta <= 0 || config.theta % config.gamma != 0) {
    throw ParamError("theta must be a positive multiple of gamma");
  }
  if (config.head_dim == 0 || config.row_len == 0 || !(config.input_multiplier > 0)) {
    throw ParamError("head_dim, row_len and input_multiplier must be positive");
  }
  const unsigned J = K - M - L;

  ZkAttnParams p;
  p.config = config;
  const double s = p.exp_scale();
  const double theta = static_cast<double>(config.theta);
  p.shift_target = s / (J + 1) * (J * std::log(2.0 * config.row_len) + std::log(theta));

  std::vector<std::int64_t> low_budget(config.budgets.begin(), config.budgets.begin() + L);
  std::vector<std::int64_t> mid_budget(config.budgets.begin() + L, config.budgets.begin() + (K - M));
  double mid_cap = 1.0;
  for (auto b : mid_budget) mid_cap *= static_cast<double>(b);
  double low_need = std::ceil(p.shift_target / mid_cap - 1e-9);
  if (L == 0 && low_need > 1.0) throw ParamError("middle budgets too small and no low segments");
  auto low = split_evenly(low_need, low_budget);
  double b_low = 1.0;
  for (auto r : low) b_low *= static_cast<double>(r);
  auto mid = split_evenly(std::ceil(p.shift_target / b_low - 1e-9), mid_budget);

  p.radices = low;
  p.radices.insert(p.radices.end(), mid.begin(), mid.end());
  p.radices.insert(p.radices.end(), config.budgets.begin() + (K - M), config.budgets.end());
  p.cumulative.assign(K, 1);
  for (unsigned k = 1; k < K; ++k) {
    if (p.cumulative[k - 1] > (std::int64_t{1} << 62) / p.radices[k - 1]) throw ParamError("input bound overflows");
    p.cumulative[k] = p.cumulative[k - 1] * p.radices[k - 1];
  }
  if (p.cumulative[K - 1] > (std::int64_t{1} << 62) / p.radices[K - 1]) throw ParamError("input bound overflows");

  const double b_l = static_cast<double>(p.low_bound());
  const double b_km = static_cast<double>(p.top_bound());
  const double common = std::pow(theta * std::exp(-(b_km - b_l) / s), 1.0 / J);
  p.segment_scale.assign(K, 1.0);
  double used = 1.0;
  for (unsigned k = L; k < K - M; ++k) {
    double ideal = std::exp(static_cast<double>(p.cumulative[k]) * static_cast<double>(p.radices[k] - 1) / s) * common;
    p.segment_scale[k] = (k + 1 < K - M) ? std::floor(ideal) : theta / used;
    if (p.segment_scale[k] < 1.0) throw ParamError("output scale too small for the segment split");
    used *= p.segment_scale[k];
  }

  p.eps_attn = attention_error_bound(p);
  p.tolerance = static_cast<std::int64_t>(std::ceil(p.eps_attn * theta));
  return p;
}

double attention_error_bound(const ZkAttnParams& p) {
  const double s = p.exp_scale();
  const double J = static_cast<double>(p.first_top() - p.first_middle());
  const double theta = static_cast<double>(p.config.theta);
  const double b_l = static_cast<double>(p.low_bound());
  const double b_km = static_cast<double>(p.top_bound());
  double c = std::pow(std::exp(b_l / (J * s)) + std::exp(b_km / (J * s)) / (2.0 * std::pow(theta, 1.0 / J)), J) - 1.0;
  return c * std::exp(1.0 / (2.0 * s)) + (p.config.row_len - 1.0) * std::exp(-b_km / s);
}

}  // namespace zkt
