#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pioneer/metrics.hpp"
#include "pioneer/simulation.hpp"
#include "pioneer/welfare.hpp"

namespace pioneer {

struct RunManifest {
    std::string command;                   // simulate | grid | pool | welfare | appendix-ts
    std::filesystem::path config_path;
    std::filesystem::path output_dir;
    std::optional<std::uint64_t> seed;     // override applied on top of the config
    bool svg = false;
};

/// $PIONEER_OUT_DIR when set and non-empty, else "pioneer_out".
std::filesystem::path default_output_dir();

/// 12 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double value);

/// Creates parent directories; throws IoError on any failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);

/// rmse_by_period.csv, stability.csv and weights.csv (rows only for the runs
/// given, replication = position in `runs`). SVG of the RMSE curves when enabled.
std::vector<std::filesystem::path> write_report(const MetricsReport& report, std::span<const SimulationRun> runs,
                                                const RunManifest& manifest);

/// One replication: weights.csv plus pooled_series.csv (method, period, pooled, truth).
std::vector<std::filesystem::path> write_report(const SimulationRun& run, const RunManifest& manifest,
                                                std::uint64_t replication = 0);

/// welfare_curve.csv (normalized by max |net benefit without lambda|) and
/// welfare_curve_raw.csv (raw utility-loss units plus sigmas and decision).
std::vector<std::filesystem::path> write_welfare_report(const WelfareCurve& curve, const RunManifest& manifest);

/// linear_ts_weights.csv (method, series, average_weight).
std::vector<std::filesystem::path> write_linear_ts_report(const LinearTsStudy& study, const RunManifest& manifest);

std::string rmse_by_period_csv(const MetricsReport& report);
std::string stability_csv(const MetricsReport& report);
std::string weights_csv(std::span<const SimulationRun> runs, std::uint64_t first_replication = 0);

}  // namespace pioneer
