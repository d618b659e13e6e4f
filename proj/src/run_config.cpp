// Copyright 2026 The wefpe Authors.
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

#include "wefpe/run_config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "wefpe/errors.hpp"

namespace wefpe {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::string_view where,
                    std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (const std::string_view a : allowed) known = known || key == a;
    if (!known) throw ConfigError(std::string(where) + ": unknown key \"" + key + "\"");
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out, std::string_view where) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string(where) + "." + key + ": " + e.what());
  }
}

EncodingMode parse_mode(const std::string& s) {
  if (s == "direct") return EncodingMode::DirectLattice;
  if (s == "fast") return EncodingMode::FastApprox;
  throw ConfigError("mode must be \"direct\" or \"fast\", got \"" + s + "\"");
}

SummationOrder parse_order(const std::string& s) {
  if (s == "sorted") return SummationOrder::ModulusSorted;
  if (s == "lexicographic") return SummationOrder::Lexicographic;
  throw ConfigError("order must be \"sorted\" or \"lexicographic\", got \"" + s + "\"");
}

}  // namespace

void refresh_half_periods(RunConfig& cfg) {
  LatticeConfig& l = cfg.encoding.lattice;
  const HalfPeriods hp = lemniscatic_half_periods(l.g2, l.g3, l.eps);
  l.omega1 = hp.omega1;
  l.omega3 = hp.omega3;
  cfg.general_case_periods = hp.general_case;
}

RunConfig parse_run_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(doc, "config",
                 {"height", "width", "model_dim", "projection_seed", "alpha_u", "alpha_v",
                  "alpha_scale_raw", "alpha_learn_raw", "beta_pos", "mode", "order", "modulation",
                  "lattice", "fast", "verify", "decay", "bench", "output"});

  RunConfig cfg;
  EncodingConfig& e = cfg.encoding;
  read(doc, "height", e.height, "config");
  read(doc, "width", e.width, "config");
  read(doc, "model_dim", e.model_dim, "config");
  read(doc, "projection_seed", e.projection_seed, "config");
  read(doc, "alpha_u", e.alpha_u, "config");
  read(doc, "alpha_v", e.alpha_v, "config");
  read(doc, "alpha_scale_raw", e.alpha_scale_raw, "config");
  read(doc, "alpha_learn_raw", e.alpha_learn_raw, "config");
  read(doc, "beta_pos", e.beta_pos, "config");
  if (doc.contains("mode")) {
    std::string s;
    read(doc, "mode", s, "config");
    e.mode = parse_mode(s);
  }
  if (doc.contains("order")) {
    std::string s;
    read(doc, "order", s, "config");
    e.order = parse_order(s);
  }
  if (doc.contains("output")) {
    std::string s;
    read(doc, "output", s, "config");
    cfg.output = s;
  }

  if (const auto it = doc.find("modulation"); it != doc.end()) {
    reject_unknown(*it, "modulation", {"mu", "sigma"});
    read(*it, "mu", e.modulation.mu, "modulation");
    if (it->contains("sigma") && !(*it)["sigma"].is_null()) {
      double sigma = 0.0;
      read(*it, "sigma", sigma, "modulation");
      e.modulation.sigma = sigma;
    }
  }
  if (const auto it = doc.find("lattice"); it != doc.end()) {
    reject_unknown(*it, "lattice",
                   {"g2", "g3", "eps", "max_m", "max_n", "term_clip", "final_clip", "pole_value"});
    LatticeConfig& l = e.lattice;
    read(*it, "g2", l.g2, "lattice");
    read(*it, "g3", l.g3, "lattice");
    read(*it, "eps", l.eps, "lattice");
    read(*it, "max_m", l.max_m, "lattice");
    read(*it, "max_n", l.max_n, "lattice");
    read(*it, "term_clip", l.term_clip, "lattice");
    read(*it, "final_clip", l.final_clip, "lattice");
    read(*it, "pole_value", l.pole_value, "lattice");
  }
  if (const auto it = doc.find("fast"); it != doc.end()) {
    reject_unknown(*it, "fast", {"beta_raw", "gamma", "omega1_norm", "omega3_norm", "k_terms"});
    FastParams& f = e.fast;
    read(*it, "beta_raw", f.beta_raw, "fast");
    read(*it, "gamma", f.gamma, "fast");
    read(*it, "omega1_norm", f.omega1_norm, "fast");
    read(*it, "omega3_norm", f.omega3_norm, "fast");
    read(*it, "k_terms", f.k_terms, "fast");
  }
  if (const auto it = doc.find("verify"); it != doc.end()) {
    reject_unknown(*it, "verify", {"samples", "seed"});
    read(*it, "samples", cfg.verify_samples, "verify");
    read(*it, "seed", cfg.verify_seed, "verify");
  }
  if (const auto it = doc.find("decay"); it != doc.end()) {
    reject_unknown(*it, "decay", {"bins"});
    read(*it, "bins", cfg.decay_bins, "decay");
  }
  if (const auto it = doc.find("bench"); it != doc.end()) {
    reject_unknown(*it, "bench", {"k_list", "points", "seed", "oracle_truncation"});
    read(*it, "k_list", cfg.bench_k_list, "bench");
    read(*it, "points", cfg.bench_points, "bench");
    read(*it, "seed", cfg.bench_seed, "bench");
    read(*it, "oracle_truncation", cfg.bench_oracle_truncation, "bench");
  }

  refresh_half_periods(cfg);
  e.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_run_config(ss.str());
}

std::string dump_run_config(const RunConfig& cfg) {
  const EncodingConfig& e = cfg.encoding;
  const LatticeConfig& l = e.lattice;
  const FastParams& f = e.fast;
  json doc = {
      {"height", e.height},
      {"width", e.width},
      {"model_dim", e.model_dim},
      {"projection_seed", e.projection_seed},
      {"alpha_u", e.alpha_u},
      {"alpha_v", e.alpha_v},
      {"alpha_scale_raw", e.alpha_scale_raw},
      {"alpha_learn_raw", e.alpha_learn_raw},
      {"beta_pos", e.beta_pos},
      {"mode", e.mode == EncodingMode::DirectLattice ? "direct" : "fast"},
      {"order", e.order == SummationOrder::ModulusSorted ? "sorted" : "lexicographic"},
      {"modulation",
       {{"mu", e.modulation.mu},
        {"sigma", e.modulation.sigma ? json(*e.modulation.sigma) : json(nullptr)}}},
      {"lattice",
       {{"g2", l.g2},
        {"g3", l.g3},
        {"eps", l.eps},
        {"max_m", l.max_m},
        {"max_n", l.max_n},
        {"term_clip", l.term_clip},
        {"final_clip", l.final_clip},
        {"pole_value", l.pole_value}}},
      {"fast",
       {{"beta_raw", f.beta_raw},
        {"gamma", f.gamma},
        {"omega1_norm", f.omega1_norm},
        {"omega3_norm", f.omega3_norm},
        {"k_terms", f.k_terms}}},
      {"verify", {{"samples", cfg.verify_samples}, {"seed", cfg.verify_seed}}},
      {"decay", {{"bins", cfg.decay_bins}}},
      {"bench",
       {{"k_list", cfg.bench_k_list},
        {"points", cfg.bench_points},
        {"seed", cfg.bench_seed},
        {"oracle_truncation", cfg.bench_oracle_truncation}}},
  };
  if (cfg.output) doc["output"] = *cfg.output;
  return doc.dump(2) + "\n";
}

}  // namespace wefpe
