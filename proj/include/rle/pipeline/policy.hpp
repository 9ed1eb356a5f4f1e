// Copyright 2026 The RLE Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Augmentation policy and its JSON configuration file. Every field is
// optional; missing fields keep their defaults. Unknown keys are rejected so
// that typos do not silently fall back to defaults.
//
//   {
//     "seed": 0,
//     "moderate": {"enabled": true, "probability": 0.5, "beta_m": 0.3,
//                  "mode": "mrle" | "grayscale" | "random_channel"},
//     "radical":  {"enabled": true, "probability": 0.5, "beta_r": 0.4, "t_min": 0.1,
//                  "max_iters": 64, "s_min": 0.02, "s_max": 0.4, "r_min": 0.3, "r_max": 3.33},
//     "erasing":  {"enabled": true, "probability": 0.5, "max_attempts": 100,
//                  "s_min": 0.02, "s_max": 0.4, "r_min": 0.3, "r_max": 3.33}
//   }

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "rle/core/error.hpp"
#include "rle/core/random.hpp"
#include "rle/core/rect.hpp"
#include "rle/radical.hpp"

namespace rle::pipeline {

enum class ModerateMode { mrle, grayscale, random_channel };

inline std::string_view to_string(ModerateMode m) {
  switch (m) {
    case ModerateMode::mrle: return "mrle";
    case ModerateMode::grayscale: return "grayscale";
    case ModerateMode::random_channel: return "random_channel";
  }
  return "mrle";
}

struct ModerateStage {
  bool enabled = true;
  double probability = 0.5;
  BetaShape beta_m{0.3};
  ModerateMode mode = ModerateMode::mrle;

  friend bool operator==(const ModerateStage&, const ModerateStage&) = default;
};

struct RadicalStage {
  bool enabled = true;
  RrleParams params{};

  friend bool operator==(const RadicalStage&, const RadicalStage&) = default;
};

struct ErasingStage {
  bool enabled = true;
  ErasingParams params{};

  friend bool operator==(const ErasingStage&, const ErasingStage&) = default;
};

/// Stages always run in the order moderate, radical, erasing.
struct AugmentPolicy {
  std::uint64_t master_seed = 0;
  ModerateStage moderate{};
  RadicalStage radical{};
  ErasingStage erasing{};

  friend bool operator==(const AugmentPolicy&, const AugmentPolicy&) = default;

  static AugmentPolicy all_disabled() {
    AugmentPolicy p;
    p.moderate.enabled = p.radical.enabled = p.erasing.enabled = false;
    return p;
  }
};

namespace detail {

using nlohmann::json;

inline void reject_unknown(const json& obj, const std::string& prefix, std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const auto k : known) ok = ok || key == k;
    if (!ok) throw ValidationError(prefix + key, "unknown field");
  }
}

inline const json* section(const json& root, const std::string& name) {
  if (!root.contains(name)) return nullptr;
  const json& s = root.at(name);
  if (!s.is_object()) throw ValidationError(name, "expected an object");
  return &s;
}

inline double read_number(const json& obj, const std::string& prefix, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ValidationError(prefix + key, "expected a number");
  return v.get<double>();
}

inline std::size_t read_count(const json& obj, const std::string& prefix, const char* key, std::size_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_unsigned()) throw ValidationError(prefix + key, "expected a non-negative integer");
  return v.get<std::size_t>();
}

inline bool read_bool(const json& obj, const std::string& prefix, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) throw ValidationError(prefix + key, "expected true or false");
  return v.get<bool>();
}

inline double probability(const json& obj, const std::string& prefix, double fallback) {
  const double p = read_number(obj, prefix, "probability", fallback);
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError(prefix + "probability", "must lie in [0, 1]");
  return p;
}

inline BetaShape beta(const json& obj, const std::string& prefix, const char* key, const BetaShape& fallback) {
  const double b = read_number(obj, prefix, key, fallback.value());
  if (!(b > 0.0)) throw ValidationError(prefix + key, "must be positive");
  return BetaShape(b);
}

inline RectBounds bounds(const json& obj, const std::string& prefix, const RectBounds& fallback) {
  RectBounds b{read_number(obj, prefix, "s_min", fallback.s_min), read_number(obj, prefix, "s_max", fallback.s_max),
               read_number(obj, prefix, "r_min", fallback.r_min), read_number(obj, prefix, "r_max", fallback.r_max)};
  if (!(b.s_min > 0.0 && b.s_min <= 1.0)) throw ValidationError(prefix + "s_min", "must lie in (0, 1]");
  if (!(b.s_max >= b.s_min && b.s_max <= 1.0)) throw ValidationError(prefix + "s_max", "must lie in [s_min, 1]");
  if (!(b.r_min > 0.0)) throw ValidationError(prefix + "r_min", "must be positive");
  if (!(b.r_max >= b.r_min)) throw ValidationError(prefix + "r_max", "must be >= r_min");
  return b;
}

inline json bounds_json(const RectBounds& b) {
  return {{"s_min", b.s_min}, {"s_max", b.s_max}, {"r_min", b.r_min}, {"r_max", b.r_max}};
}

}  // namespace detail

/// Parses a policy document. Malformed JSON raises ParseError carrying the
/// line and column; a bad field raises ValidationError naming it.
inline AugmentPolicy parse_policy(std::string_view text, const std::string& source = "config") {
  using nlohmann::json;
  AugmentPolicy policy;
  bool blank = true;
  for (const char ch : text) blank = blank && std::isspace(static_cast<unsigned char>(ch));
  if (blank) return policy;

  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ": " + e.what());
  }
  if (!root.is_object()) throw ParseError(source + ": top level must be a JSON object");
  detail::reject_unknown(root, "", {"seed", "moderate", "radical", "erasing"});

  if (root.contains("seed")) {
    if (!root.at("seed").is_number_unsigned()) throw ValidationError("seed", "expected a non-negative integer");
    policy.master_seed = root.at("seed").get<std::uint64_t>();
  }
  if (const json* m = detail::section(root, "moderate")) {
    const std::string pre = "moderate.";
    detail::reject_unknown(*m, pre, {"enabled", "probability", "beta_m", "mode"});
    auto& st = policy.moderate;
    st.enabled = detail::read_bool(*m, pre, "enabled", st.enabled);
    st.probability = detail::probability(*m, pre, st.probability);
    st.beta_m = detail::beta(*m, pre, "beta_m", st.beta_m);
    if (m->contains("mode")) {
      const json& mode = m->at("mode");
      const std::string name = mode.is_string() ? mode.get<std::string>() : "";
      if (name == "mrle") st.mode = ModerateMode::mrle;
      else if (name == "grayscale") st.mode = ModerateMode::grayscale;
      else if (name == "random_channel") st.mode = ModerateMode::random_channel;
      else throw ValidationError(pre + "mode", "expected \"mrle\", \"grayscale\" or \"random_channel\"");
    }
  }
  if (const json* r = detail::section(root, "radical")) {
    const std::string pre = "radical.";
    detail::reject_unknown(*r, pre, {"enabled", "probability", "beta_r", "t_min", "max_iters", "s_min", "s_max",
                                     "r_min", "r_max"});
    auto& st = policy.radical;
    st.enabled = detail::read_bool(*r, pre, "enabled", st.enabled);
    st.params.probability = detail::probability(*r, pre, st.params.probability);
    st.params.beta_r = detail::beta(*r, pre, "beta_r", st.params.beta_r);
    st.params.t_min = detail::read_number(*r, pre, "t_min", st.params.t_min);
    if (!(st.params.t_min > 0.0 && st.params.t_min < 1.0)) throw ValidationError(pre + "t_min", "must lie in (0, 1)");
    st.params.max_iters = detail::read_count(*r, pre, "max_iters", st.params.max_iters);
    if (st.params.max_iters < 1) throw ValidationError(pre + "max_iters", "must be >= 1");
    st.params.bounds = detail::bounds(*r, pre, st.params.bounds);
  }
  if (const json* e = detail::section(root, "erasing")) {
    const std::string pre = "erasing.";
    detail::reject_unknown(*e, pre, {"enabled", "probability", "max_attempts", "s_min", "s_max", "r_min", "r_max"});
    auto& st = policy.erasing;
    st.enabled = detail::read_bool(*e, pre, "enabled", st.enabled);
    st.params.probability = detail::probability(*e, pre, st.params.probability);
    st.params.max_attempts = detail::read_count(*e, pre, "max_attempts", st.params.max_attempts);
    if (st.params.max_attempts < 1) throw ValidationError(pre + "max_attempts", "must be >= 1");
    st.params.bounds = detail::bounds(*e, pre, st.params.bounds);
  }
  return policy;
}

inline AugmentPolicy load_policy(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_policy(text.str(), path.string());
}

inline nlohmann::json policy_to_json(const AugmentPolicy& p) {
  using nlohmann::json;
  json moderate = {{"enabled", p.moderate.enabled},
                   {"probability", p.moderate.probability},
                   {"beta_m", p.moderate.beta_m.value()},
                   {"mode", std::string(to_string(p.moderate.mode))}};
  json radical = detail::bounds_json(p.radical.params.bounds);
  radical["enabled"] = p.radical.enabled;
  radical["probability"] = p.radical.params.probability;
  radical["beta_r"] = p.radical.params.beta_r.value();
  radical["t_min"] = p.radical.params.t_min;
  radical["max_iters"] = p.radical.params.max_iters;
  json erasing = detail::bounds_json(p.erasing.params.bounds);
  erasing["enabled"] = p.erasing.enabled;
  erasing["probability"] = p.erasing.params.probability;
  erasing["max_attempts"] = p.erasing.params.max_attempts;
  return {{"seed", p.master_seed}, {"moderate", moderate}, {"radical", radical}, {"erasing", erasing}};
}

/// Serializes so that parse_policy(serialize_policy(p)) == p.
inline std::string serialize_policy(const AugmentPolicy& p) { return policy_to_json(p).dump(2) + "\n"; }

}  // namespace rle::pipeline
