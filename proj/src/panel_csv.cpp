#include "pioneer/panel_csv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "pioneer/errors.hpp"

namespace pioneer {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

double parse_cell(std::string_view cell, std::size_t row, std::size_t col) {
    if (cell.empty()) throw ParseError(row, col, "blank cell");
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw ParseError(row, col, "not a number: '" + std::string(cell) + "'");
    }
    if (!std::isfinite(v)) throw ParseError(row, col, "non-finite value");
    return v;
}

bool next_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

}  // namespace

LoadedPanel read_panel_csv(std::istream& in, double step) {
    std::string line;
    std::size_t row = 0;
    while (next_line(in, line)) {
        ++row;
        if (!trim(line).empty()) break;
    }
    if (trim(line).empty()) throw ParseError(1, 1, "empty file");

    const auto header = split(line);
    if (header.front() != "expert_id") throw ParseError(row, 1, "first header cell must be 'expert_id'");
    const std::size_t periods = header.size() - 1;
    if (periods == 0) throw ParseError(row, 2, "no period columns");
    for (std::size_t k = 0; k < periods; ++k) {
        if (header[k + 1] != "t" + std::to_string(k)) {
            throw ParseError(row, k + 2, "expected header 't" + std::to_string(k) + "'");
        }
    }

    std::vector<std::string> ids;
    std::vector<std::vector<double>> rows;
    while (next_line(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto cells = split(line);
        if (cells.size() != header.size()) {
            throw ParseError(row, std::min(cells.size(), header.size()) + 1,
                             "expected " + std::to_string(header.size()) + " cells, found " +
                                 std::to_string(cells.size()));
        }
        if (cells.front().empty()) throw ParseError(row, 1, "blank expert_id");
        ids.emplace_back(cells.front());
        std::vector<double> values(periods);
        for (std::size_t k = 0; k < periods; ++k) values[k] = parse_cell(cells[k + 1], row, k + 2);
        rows.push_back(std::move(values));
    }
    if (rows.size() < 2) {
        throw ParseError(row + 1, 1, "a panel needs at least 2 experts, found " + std::to_string(rows.size()));
    }
    return LoadedPanel{EstimatePanel::from_rows(rows, step), std::move(ids)};
}

LoadedPanel load_panel_csv(const std::filesystem::path& path, double step) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open panel file " + path.string());
    return read_panel_csv(in, step);
}

void write_panel_csv(std::ostream& out, const EstimatePanel& panel, const std::vector<std::string>& expert_ids) {
    out << "expert_id";
    for (std::size_t t = 0; t < panel.periods(); ++t) out << ",t" << t;
    out << '\n';
    char buf[40];
    for (std::size_t i = 0; i < panel.experts(); ++i) {
        out << (i < expert_ids.size() ? expert_ids[i] : std::to_string(i));
        for (std::size_t t = 0; t < panel.periods(); ++t) {
            std::snprintf(buf, sizeof buf, "%.17g", panel(i, t));
            out << ',' << buf;
        }
        out << '\n';
    }
}

std::vector<double> load_series_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open series file " + path.string());
    std::string line;
    std::size_t row = 0;
    if (!next_line(in, line)) throw ParseError(1, 1, "empty file");
    ++row;
    const auto header = split(line);
    std::size_t value_col = 0;
    if (header.size() == 1 && header[0] == "truth") {
        value_col = 0;
    } else if (header.size() == 2 && header[1] == "truth") {
        value_col = 1;
    } else {
        throw ParseError(1, 1, "expected header 'truth' or 't,truth'");
    }
    std::vector<double> out;
    while (next_line(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto cells = split(line);
        if (cells.size() != header.size()) throw ParseError(row, cells.size() + 1, "ragged row");
        out.push_back(parse_cell(cells[value_col], row, value_col + 1));
    }
    return out;
}

}  // namespace pioneer
