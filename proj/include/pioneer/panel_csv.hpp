#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pioneer/panel.hpp"

namespace pioneer {

struct LoadedPanel {
    EstimatePanel panel;
    std::vector<std::string> expert_ids;
};

/// Wide CSV: header `expert_id,t0,t1,...`, one row per expert. Ragged rows,
/// blank or non-numeric cells raise ParseError with 1-based row/column.
LoadedPanel read_panel_csv(std::istream& in, double step = 1.0);
LoadedPanel load_panel_csv(const std::filesystem::path& path, double step = 1.0);

/// Writes with 17 significant digits so a reload is exact.
void write_panel_csv(std::ostream& out, const EstimatePanel& panel, const std::vector<std::string>& expert_ids = {});

/// Single-column truth series: header `truth` (or `t,truth`), one value per period.
std::vector<double> load_series_csv(const std::filesystem::path& path);

}  // namespace pioneer
