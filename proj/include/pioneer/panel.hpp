#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pioneer {

/// m x T matrix of expert tail-index estimates, stored period-major so that
/// the cross-section at one period is contiguous.
class EstimatePanel {
public:
    EstimatePanel(std::size_t experts, std::size_t periods, std::vector<double> period_major, double step = 1.0);

    /// rows[i][t] is expert i at period t.
    static EstimatePanel from_rows(const std::vector<std::vector<double>>& rows, double step = 1.0);

    std::size_t experts() const noexcept { return experts_; }
    std::size_t periods() const noexcept { return periods_; }
    double step() const noexcept { return step_; }

    double operator()(std::size_t i, std::size_t t) const { return data_[t * experts_ + i]; }
    std::span<const double> column(std::size_t t) const { return {data_.data() + t * experts_, experts_}; }
    std::vector<double> row(std::size_t i) const;

    /// Periods [first, first + count).
    EstimatePanel slice(std::size_t first, std::size_t count) const;

    template <class F>
    EstimatePanel transformed(F&& f) const {
        std::vector<double> out(data_.size());
        for (std::size_t k = 0; k < data_.size(); ++k) out[k] = f(data_[k]);
        return EstimatePanel(experts_, periods_, std::move(out), step_);
    }

    friend bool operator==(const EstimatePanel&, const EstimatePanel&) = default;

private:
    std::size_t experts_;
    std::size_t periods_;
    std::vector<double> data_;
    double step_;
};

/// Per-period normalized weight vectors plus the pioneer flag of each (expert, period).
class WeightSeries {
public:
    WeightSeries() = default;
    WeightSeries(std::size_t experts, std::size_t periods)
        : experts_(experts), periods_(periods), weights_(experts * periods, 0.0), flags_(experts * periods, 0) {}

    std::size_t experts() const noexcept { return experts_; }
    std::size_t periods() const noexcept { return periods_; }

    std::span<const double> at(std::size_t t) const { return {weights_.data() + t * experts_, experts_}; }
    std::span<double> at(std::size_t t) { return {weights_.data() + t * experts_, experts_}; }
    double weight(std::size_t i, std::size_t t) const { return weights_[t * experts_ + i]; }
    bool pioneer(std::size_t i, std::size_t t) const { return flags_[t * experts_ + i] != 0; }
    void set_pioneer(std::size_t i, std::size_t t, bool flag) { flags_[t * experts_ + i] = flag ? 1 : 0; }

    friend bool operator==(const WeightSeries&, const WeightSeries&) = default;

private:
    std::size_t experts_ = 0;
    std::size_t periods_ = 0;
    std::vector<double> weights_;
    std::vector<std::uint8_t> flags_;
};

}  // namespace pioneer
