#include "spinmarket/series.hpp"

#include <algorithm>
#include <cmath>

#include "spinmarket/errors.hpp"

namespace spinmarket {

void PriceSeries::validate() const {
    if (timestamps.size() != prices.size()) {
        throw_validation("timestamps and prices must have equal length");
    }
    for (std::size_t i = 0; i < prices.size(); ++i) {
        if (!(prices[i] > 0.0) || !std::isfinite(prices[i])) {
            throw_validation("prices must be positive (sample " + std::to_string(i) + ")");
        }
        if (i > 0 && timestamps[i] <= timestamps[i - 1]) {
            throw_validation("timestamps must be strictly increasing (sample " +
                             std::to_string(i) + ")");
        }
    }
    auto check_parallel = [&](const std::vector<double>& v, const char* name) {
        if (!v.empty() && v.size() != prices.size()) {
            throw_validation(std::string(name) + " must parallel prices");
        }
    };
    check_parallel(volumes, "volumes");
    check_parallel(opens, "opens");
    check_parallel(closes, "closes");
    check_parallel(highs, "highs");
    check_parallel(lows, "lows");
    for (double v : volumes) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw_validation("volumes must be >= 0");
    }
    if (level < 0) throw_validation("level must be >= 0");
}

std::vector<std::pair<std::int64_t, double>> log_returns(const PriceSeries& series) {
    series.validate();
    if (series.size() < 2) {
        throw Error(ErrorKind::validation,
                    "insufficient data: need at least 2 samples for returns");
    }
    std::vector<std::pair<std::int64_t, double>> out;
    out.reserve(series.size() - 1);
    for (std::size_t i = 0; i + 1 < series.size(); ++i) {
        out.emplace_back(series.timestamps[i + 1],
                         std::log(series.prices[i + 1] / series.prices[i]));
    }
    return out;
}

std::vector<int> assign_sign(std::span<const double> abs_temps,
                             int trend_window, double threshold) {
    if (trend_window < 3) throw_validation("trend_window must be >= 3");
    const std::size_t n = abs_temps.size();
    std::vector<int> signs(n, +1);
    const std::size_t w = static_cast<std::size_t>(trend_window);
    if (n < w) return signs;

    // x = 0..w-1, so sum(x - xbar)^2 and xbar are constants of the window.
    const double xbar = 0.5 * static_cast<double>(w - 1);
    double sxx = 0.0;
    for (std::size_t j = 0; j < w; ++j) {
        const double d = static_cast<double>(j) - xbar;
        sxx += d * d;
    }

    for (std::size_t i = w - 1; i < n; ++i) {
        const std::size_t begin = i + 1 - w;
        double mean = 0.0;
        for (std::size_t j = 0; j < w; ++j) mean += abs_temps[begin + j];
        mean /= static_cast<double>(w);
        if (mean == 0.0) continue;  // all-zero window: positive by convention
        double sxy = 0.0;
        for (std::size_t j = 0; j < w; ++j) {
            sxy += (static_cast<double>(j) - xbar) * (abs_temps[begin + j] - mean);
        }
        const double slope = sxy / sxx;
        if (slope / mean > threshold) signs[i] = -1;
    }
    return signs;
}

TemperatureSeries estimate_temperature(const PriceSeries& series,
                                       const TemperatureParams& params) {
    series.validate();
    if (params.window < 3) throw_validation("window must be >= 3 samples");
    if (!(params.dt > 0.0)) throw_validation("dt must be > 0");

    TemperatureSeries out;
    out.timestamps = series.timestamps;
    out.temperatures.assign(series.size(), std::nullopt);
    out.level = series.level;
    out.window = params.window;
    out.sign_method = params.sign_method;

    const std::size_t w = static_cast<std::size_t>(params.window);
    if (series.size() < w) return out;  // no estimates, all warm-up

    const std::size_t m = w - 1;  // returns per window
    std::vector<double> r(series.size() - 1);
    for (std::size_t i = 0; i + 1 < series.size(); ++i) {
        r[i] = std::log(series.prices[i + 1] / series.prices[i]);
    }

    // Rolling sums plus a run-length of equal consecutive returns, so that
    // windows of identical returns give exactly zero instead of rounding
    // residue from the cancellation in q - s^2/m.
    std::vector<double> s_prefix(r.size() + 1, 0.0), q_prefix(r.size() + 1, 0.0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        s_prefix[i + 1] = s_prefix[i] + r[i];
        q_prefix[i + 1] = q_prefix[i] + r[i] * r[i];
    }
    std::vector<std::size_t> equal_run(r.size(), 1);
    for (std::size_t i = 1; i < r.size(); ++i) {
        equal_run[i] = r[i] == r[i - 1] ? equal_run[i - 1] + 1 : 1;
    }

    std::vector<double> abs_t;
    abs_t.reserve(series.size() - w + 1);
    for (std::size_t i = w - 1; i < series.size(); ++i) {
        const std::size_t last = i - 1;  // last return index in the window
        double value = 0.0;
        if (equal_run[last] < m) {
            const double s = s_prefix[last + 1] - s_prefix[last + 1 - m];
            const double q = q_prefix[last + 1] - q_prefix[last + 1 - m];
            const double ss = q - s * s / static_cast<double>(m);
            value = std::max(ss, 0.0) / (static_cast<double>(m - 1) * params.dt);
        }
        abs_t.push_back(value);
    }

    std::vector<int> signs(abs_t.size(), +1);
    if (params.sign_method == SignMethod::volatility_trend) {
        signs = assign_sign(abs_t, params.trend_window, params.threshold);
    }
    for (std::size_t k = 0; k < abs_t.size(); ++k) {
        out.temperatures[w - 1 + k] = signs[k] * abs_t[k];
    }
    return out;
}

TemperatureSeries estimate_temperature(const PriceSeries& series, int window,
                                       double dt) {
    TemperatureParams p;
    p.window = window;
    p.dt = dt;
    return estimate_temperature(series, p);
}

}  // namespace spinmarket
