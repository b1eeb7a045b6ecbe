#include "spinmarket/detector.hpp"

#include <algorithm>
#include <cmath>

#include "spinmarket/errors.hpp"

namespace spinmarket {

std::vector<SignalEvent> detect_transitions(const TemperatureStack& stack,
                                            double tolerance, double floor_value) {
    if (stack.levels.size() < 2) {
        throw_validation("detector needs at least 2 temperature levels");
    }
    if (!(tolerance > 0.0)) throw_validation("tolerance must be > 0");
    if (!(floor_value > 0.0)) throw_validation("floor must be > 0");

    const auto& level0 = stack.levels.front();
    const std::size_t n_levels = stack.levels.size();
    std::vector<std::size_t> cursor(n_levels, 0);  // next candidate per level

    std::vector<SignalEvent> events;
    bool prev_qualified = false;
    for (std::size_t i = 0; i < level0.size(); ++i) {
        const std::int64_t now = level0.timestamps[i];

        bool complete = true;
        std::vector<double> values(n_levels);
        std::vector<std::int64_t> used_ts(n_levels);
        for (std::size_t k = 0; k < n_levels && complete; ++k) {
            const auto& lvl = stack.levels[k];
            while (cursor[k] + 1 < lvl.size() && lvl.timestamps[cursor[k] + 1] <= now) {
                ++cursor[k];
            }
            // Walk back to the latest *present* value at or before now.
            std::size_t j = cursor[k];
            while (true) {
                if (lvl.timestamps[j] <= now && lvl.temperatures[j].has_value()) break;
                if (j == 0) {
                    complete = false;
                    break;
                }
                --j;
            }
            if (complete) {
                values[k] = *lvl.temperatures[j];
                used_ts[k] = lvl.timestamps[j];
            }
        }
        if (!complete) {
            prev_qualified = false;
            continue;
        }

        const auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= static_cast<double>(n_levels);
        const double spread = (*mx_it - *mn_it) / std::max(std::abs(mean), floor_value);

        const bool all_pos = std::all_of(values.begin(), values.end(),
                                         [](double v) { return v > 0.0; });
        const bool all_neg = std::all_of(values.begin(), values.end(),
                                         [](double v) { return v < 0.0; });
        const bool qualified = spread < tolerance && (all_pos || all_neg);

        if (qualified && !prev_qualified) {
            SignalEvent ev;
            ev.timestamp = now;
            ev.level_values = values;
            ev.level_timestamps = used_ts;
            ev.relative_spread = spread;
            events.push_back(std::move(ev));
        }
        prev_qualified = qualified;
    }
    return events;
}

}  // namespace spinmarket
