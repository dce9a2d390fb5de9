// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#pragma once

#include "jcs/experiments.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>

namespace jcs {

/// Applies the keys present in `j` on top of `base`. Unknown keys and
/// wrongly typed values raise ConfigError naming the offending path.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});

/// Full resolved configuration. Reading it back reproduces the same run.
nlohmann::json config_to_json(const ExperimentConfig& cfg);

ExperimentConfig load_config(const std::filesystem::path& path);

} // namespace jcs
