#include "pioneer/panel.hpp"

#include <cmath>
#include <string>

#include "pioneer/errors.hpp"

namespace pioneer {

EstimatePanel::EstimatePanel(std::size_t experts, std::size_t periods, std::vector<double> period_major, double step)
    : experts_(experts), periods_(periods), data_(std::move(period_major)), step_(step) {
    if (experts_ < 2) throw DomainError("EstimatePanel: needs at least 2 experts, got " + std::to_string(experts_));
    if (periods_ < 1) throw DomainError("EstimatePanel: needs at least 1 period");
    if (data_.size() != experts_ * periods_) throw DomainError("EstimatePanel: data size does not match m x T");
    if (!(step_ > 0.0) || !std::isfinite(step_)) throw DomainError("EstimatePanel: period step must be positive");
    for (std::size_t k = 0; k < data_.size(); ++k) {
        if (!std::isfinite(data_[k])) {
            throw DomainError("EstimatePanel: non-finite estimate for expert " + std::to_string(k % experts_) +
                              " at period " + std::to_string(k / experts_));
        }
    }
}

EstimatePanel EstimatePanel::from_rows(const std::vector<std::vector<double>>& rows, double step) {
    const std::size_t m = rows.size();
    const std::size_t periods = m == 0 ? 0 : rows.front().size();
    std::vector<double> data(m * periods);
    for (std::size_t i = 0; i < m; ++i) {
        if (rows[i].size() != periods) throw DomainError("EstimatePanel: ragged rows");
        for (std::size_t t = 0; t < periods; ++t) data[t * m + i] = rows[i][t];
    }
    return EstimatePanel(m, periods, std::move(data), step);
}

std::vector<double> EstimatePanel::row(std::size_t i) const {
    std::vector<double> out(periods_);
    for (std::size_t t = 0; t < periods_; ++t) out[t] = (*this)(i, t);
    return out;
}

EstimatePanel EstimatePanel::slice(std::size_t first, std::size_t count) const {
    if (first + count > periods_) throw ContractViolation("EstimatePanel::slice: range exceeds horizon");
    std::vector<double> out(data_.begin() + static_cast<std::ptrdiff_t>(first * experts_),
                            data_.begin() + static_cast<std::ptrdiff_t>((first + count) * experts_));
    return EstimatePanel(experts_, count, std::move(out), step_);
}

}  // namespace pioneer
