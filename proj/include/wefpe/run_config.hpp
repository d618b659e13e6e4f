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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wefpe/encoding.hpp"

namespace wefpe {

// Everything a CLI run needs. Missing JSON keys keep these defaults;
// unknown keys are rejected.
struct RunConfig {
  EncodingConfig encoding;

  // verify
  std::size_t verify_samples = 200;
  std::uint64_t verify_seed = 0;

  // decay
  int decay_bins = 80;

  // bench
  std::vector<std::size_t> bench_k_list{8, 24, 48, 100, 200, 400, 624};
  std::size_t bench_points = 50;
  std::uint64_t bench_seed = 0;
  int bench_oracle_truncation = 48;

  std::optional<std::string> output;

  // True when (g2, g3) fell into the placeholder-period case.
  bool general_case_periods = false;
};

// Throws ConfigError on malformed JSON, wrong types, unknown keys or values
// that fail validation.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::filesystem::path& path);

// Full document with every key, suitable as a template.
std::string dump_run_config(const RunConfig& cfg);

// Re-derives ω1 from (g2, g3, eps) after the invariants change.
void refresh_half_periods(RunConfig& cfg);

}  // namespace wefpe
