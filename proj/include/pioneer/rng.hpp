#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace pioneer {

enum class StreamPurpose : std::uint64_t {
    losses = 1,
    linear_ts = 2,
    gaussian_panel = 3,
    bootstrap = 4,
};

/// Stateless 64-bit finalizer (splitmix64).
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Identifier of the sub-stream owned by (seed, replication, index, purpose).
/// Every random quantity in a run is drawn from exactly one such stream, so
/// results never depend on evaluation order or thread count.
std::uint64_t derive_stream_id(std::uint64_t seed, std::uint64_t replication, std::uint64_t index,
                               StreamPurpose purpose) noexcept;

class Stream {
public:
    using result_type = std::uint64_t;

    explicit Stream(std::uint64_t id) : id_(id), engine_(id) {}
    Stream(std::uint64_t seed, std::uint64_t replication, std::uint64_t index, StreamPurpose purpose)
        : Stream(derive_stream_id(seed, replication, index, purpose)) {}

    static constexpr result_type min() { return std::numeric_limits<result_type>::min(); }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return engine_(); }

    // Uniform on the open interval (0, 1); never returns 0 or 1.
    double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    double gaussian() { return normal_(engine_); }

    std::uint64_t id() const noexcept { return id_; }

private:
    std::uint64_t id_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

}  // namespace pioneer
