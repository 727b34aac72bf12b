// Copyright 2026 The aan_dro Authors
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

// Run configuration file: a JSON document with `scenario`, `ambiguity`,
// `experiment` and `output` blocks. Every key is optional and defaults to
// the reference parameter set; unknown keys are rejected. Gains and noise are
// given in dB and converted to linear values here.

#pragma once

#include "aan/evaluation.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aan {

struct SweepSpec {
    std::string param;
    std::vector<double> values;
};

struct RunConfig {
    ExperimentConfig experiment;
    std::optional<SweepSpec> sweep;
    std::filesystem::path output_dir = "out";
};

/// "dro", "do", "ro", "exhaustive". Throws ConfigError otherwise.
Method parse_method(const std::string& name);
const char* method_cli_name(Method method);

/// Throws ConfigError naming the offending key path (e.g. "scenario.bandwidth_td_uav_hz").
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::filesystem::path& path);

/// Complete document in the file schema, every key present. parse_run_config
/// of the result reproduces the config.
nlohmann::json run_config_to_json(const RunConfig& config);

/// Replaces the value at a dotted key path ("scenario.num_tds") with `value`,
/// read as JSON when it parses and as a string otherwise, then re-validates.
void apply_override(RunConfig& config, const std::string& path, const std::string& value);

std::uint64_t fnv1a64(std::string_view bytes);

/// FNV-1a of the canonical JSON dump without the output block, as 16 hex digits.
std::string config_hash(const RunConfig& config);

double db_to_linear(double db);
double linear_to_db(double linear);

} // namespace aan
