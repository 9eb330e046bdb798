#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <variant>

#include "pioneer/simulation.hpp"
#include "pioneer/welfare.hpp"

namespace pioneer {

// Config files are flat UTF-8 `key = value` lines; `#` starts a comment.
// Unknown and duplicate keys are rejected; every error names its key.

struct SimulateSettings {
    ScenarioConfig scenario;
    std::size_t replications = 1000;
};

struct LinearTsSettings {
    LinearTsConfig linear;
    std::size_t replications = 500;
};

enum class ConfigKind { scenario, linear_ts, welfare };

using AnyConfig = std::variant<SimulateSettings, LinearTsSettings, WelfarePipelineConfig>;

/// key -> (value, 1-based line).
using KeyValues = std::map<std::string, std::pair<std::string, std::size_t>>;

KeyValues parse_key_values(std::string_view text);

SimulateSettings parse_scenario_text(std::string_view text);
LinearTsSettings parse_linear_ts_text(std::string_view text);
WelfarePipelineConfig parse_welfare_text(std::string_view text);

AnyConfig parse_config(const std::filesystem::path& path, ConfigKind kind);

/// Helpers shared with the CLI for list-valued flags.
std::vector<double> parse_double_list(std::string_view key, std::string_view text);
std::vector<std::size_t> parse_size_list(std::string_view key, std::string_view text);
std::vector<PoolingKind> parse_method_list(std::string_view key, std::string_view text);

}  // namespace pioneer
