#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace spinmarket {

/// Timestamped price series. Level 0 is the raw series; each block
/// renormalization increments the level. Volumes and per-sample open/close
/// values are optional parallel arrays (opens/closes come from OHLCV input
/// and survive renormalization as block first-open / last-close).
struct PriceSeries {
    std::vector<std::int64_t> timestamps;  // epoch ms, strictly increasing
    std::vector<double> prices;            // > 0
    std::vector<double> volumes;           // empty or parallel, >= 0
    std::vector<double> opens;             // empty or parallel
    std::vector<double> closes;            // empty or parallel
    std::vector<double> highs;             // level-0 OHLCV only
    std::vector<double> lows;
    int level = 0;

    std::size_t size() const { return prices.size(); }
    bool has_volumes() const { return !volumes.empty(); }
    void validate() const;
};

enum class SignMethod { volatility_trend, always_positive };

/// Signed effective temperature per sample; warm-up entries are absent
/// (serialized as empty fields, never as zero).
struct TemperatureSeries {
    std::vector<std::int64_t> timestamps;
    std::vector<std::optional<double>> temperatures;
    int level = 0;
    int window = 0;  // samples per estimate
    SignMethod sign_method = SignMethod::volatility_trend;

    std::size_t size() const { return temperatures.size(); }
};

/// r_i = ln(p_{i+1}/p_i), stamped at the later instant.
std::vector<std::pair<std::int64_t, double>> log_returns(const PriceSeries& series);

struct TemperatureParams {
    int window = 32;       // samples; uses window-1 trailing returns
    double dt = 1.0;       // sampling interval in the series' time unit
    int trend_window = 16;
    double threshold = 0.05;
    SignMethod sign_method = SignMethod::volatility_trend;
};

/// |T_t| is the unbiased realized variance of the trailing window-1
/// log-returns per unit time (the diffusion coefficient of the log price).
/// The sign comes from assign_sign under the volatility-trend criterion.
TemperatureSeries estimate_temperature(const PriceSeries& series,
                                       const TemperatureParams& params);
TemperatureSeries estimate_temperature(const PriceSeries& series, int window,
                                       double dt);

/// Negative sign where the least-squares slope of |T| over the trailing
/// trend_window, normalized by the window mean of |T|, exceeds threshold.
/// Leading entries and degenerate all-zero windows default to positive.
std::vector<int> assign_sign(std::span<const double> abs_temps,
                             int trend_window, double threshold);

}  // namespace spinmarket
