#include "spinmarket/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinmarket/errors.hpp"

namespace spinmarket {

void BlockPartition::validate(std::size_t n_samples) const {
    if (ranges.empty()) throw_validation("partition has no blocks");
    std::size_t expect = 0;
    for (std::size_t b = 0; b < ranges.size(); ++b) {
        const auto& r = ranges[b];
        if (r.begin != expect) {
            throw_validation("partition blocks must be contiguous (block " +
                             std::to_string(b) + ")");
        }
        if (r.end <= r.begin) {
            throw_validation("partition block " + std::to_string(b) + " is empty");
        }
        expect = r.end;
    }
    if (expect != n_samples) {
        throw_validation("partition does not cover the series");
    }
}

BlockPartition BlockPartition::fixed(std::size_t n_samples, std::size_t block_size) {
    if (block_size == 0) throw_validation("block_size must be >= 1");
    if (n_samples == 0) throw_validation("cannot partition an empty series");
    BlockPartition p;
    for (std::size_t begin = 0; begin < n_samples; begin += block_size) {
        p.ranges.push_back({begin, std::min(begin + block_size, n_samples)});
    }
    return p;
}

BlockPartition BlockPartition::singletons(std::size_t n_samples) {
    return fixed(n_samples, 1);
}

BlockPartition BlockPartition::by_day(std::span<const std::int64_t> ts) {
    if (ts.empty()) throw_validation("cannot partition an empty series");
    constexpr std::int64_t kDayMs = 86'400'000;
    auto day = [](std::int64_t t) {
        return t >= 0 ? t / kDayMs : (t - kDayMs + 1) / kDayMs;
    };
    BlockPartition p;
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= ts.size(); ++i) {
        if (i == ts.size() || day(ts[i]) != day(ts[begin])) {
            p.ranges.push_back({begin, i});
            begin = i;
        }
    }
    return p;
}

void WeightProfile::validate(const BlockPartition& partition) const {
    if (weights_per_block.size() != partition.ranges.size()) {
        throw_validation("weight profile does not match partition block count");
    }
    for (std::size_t b = 0; b < weights_per_block.size(); ++b) {
        const auto& w = weights_per_block[b];
        const auto& r = partition.ranges[b];
        if (w.size() != r.end - r.begin) {
            throw_validation("weights of block " + std::to_string(b) +
                             " do not match its length");
        }
        double sum = 0.0;
        for (double v : w) {
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw_validation("weights must be non-negative");
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-12) {
            throw_validation("weights of block " + std::to_string(b) +
                             " must sum to 1");
        }
    }
}

WeightProfile block_weights_from_volume(const PriceSeries& series,
                                        const BlockPartition& partition) {
    series.validate();
    partition.validate(series.size());
    if (!series.has_volumes()) {
        throw Error(ErrorKind::validation, "missing data: series has no volumes");
    }
    WeightProfile profile;
    profile.weights_per_block.reserve(partition.ranges.size());
    for (const auto& r : partition.ranges) {
        const std::size_t len = r.end - r.begin;
        std::vector<double> w(len);
        double total = 0.0;
        for (std::size_t i = 0; i < len; ++i) total += series.volumes[r.begin + i];
        if (total > 0.0) {
            for (std::size_t i = 0; i < len; ++i) {
                w[i] = series.volumes[r.begin + i] / total;
            }
        } else {
            std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(len));
        }
        profile.weights_per_block.push_back(std::move(w));
    }
    return profile;
}

WeightProfile uniform_weights(const BlockPartition& partition) {
    WeightProfile profile;
    profile.weights_per_block.reserve(partition.ranges.size());
    for (const auto& r : partition.ranges) {
        const std::size_t len = r.end - r.begin;
        profile.weights_per_block.emplace_back(len, 1.0 / static_cast<double>(len));
    }
    return profile;
}

PriceSeries renormalize_series(const PriceSeries& series,
                               const BlockPartition& partition,
                               const WeightProfile& weights, RenormMode mode) {
    series.validate();
    partition.validate(series.size());
    weights.validate(partition);

    PriceSeries out;
    out.level = series.level + 1;
    const std::size_t nb = partition.ranges.size();
    out.timestamps.reserve(nb);
    out.prices.reserve(nb);
    const bool carry_volumes = series.has_volumes();
    const bool carry_oc = !series.opens.empty() && !series.closes.empty();

    for (std::size_t b = 0; b < nb; ++b) {
        const auto& r = partition.ranges[b];
        const auto& w = weights.weights_per_block[b];
        const std::size_t len = r.end - r.begin;

        double value = 0.0;
        if (mode == RenormMode::weighted_all) {
            for (std::size_t i = 0; i < len; ++i) {
                value += w[i] * series.prices[r.begin + i];
            }
        } else {
            // First/last prices of the block weighted by their two volumes.
            const std::size_t f = r.begin, l = r.end - 1;
            const double pf = carry_oc ? series.opens[f] : series.prices[f];
            const double pl = carry_oc ? series.closes[l] : series.prices[l];
            if (len == 1) {
                value = series.prices[f];
            } else {
                double vf = carry_volumes ? series.volumes[f] : 1.0;
                double vl = carry_volumes ? series.volumes[l] : 1.0;
                const double tot = vf + vl;
                if (tot > 0.0) {
                    value = (vf * pf + vl * pl) / tot;
                } else {
                    value = 0.5 * pf + 0.5 * pl;
                }
            }
        }

        out.timestamps.push_back(series.timestamps[r.end - 1]);  // block close
        out.prices.push_back(value);
        if (carry_volumes) {
            double vol = 0.0;
            for (std::size_t i = r.begin; i < r.end; ++i) vol += series.volumes[i];
            out.volumes.push_back(vol);
        }
        if (carry_oc) {
            out.opens.push_back(series.opens[r.begin]);
            out.closes.push_back(series.closes[r.end - 1]);
        }
    }
    out.validate();
    return out;
}

TemperatureStack temperature_stack(const PriceSeries& series,
                                   const std::vector<BlockPartition>& partitions,
                                   const StackParams& params) {
    series.validate();
    if (!params.dt_per_level.empty() &&
        params.dt_per_level.size() != partitions.size() + 1) {
        throw_validation("dt_per_level must have one entry per level");
    }
    for (double dt : params.dt_per_level) {
        if (!(dt > 0.0)) throw_validation("dt_per_level entries must be > 0");
    }

    TemperatureStack stack;
    PriceSeries current = series;
    // Level-0 index span covered by each sample of the current level.
    std::vector<std::pair<std::size_t, std::size_t>> cover(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) cover[i] = {i, i};

    double dt = params.dt_per_level.empty() ? params.temperature.dt
                                            : params.dt_per_level[0];
    const std::size_t n_levels = partitions.size() + 1;
    for (std::size_t lvl = 0; lvl < n_levels; ++lvl) {
        if (current.size() < static_cast<std::size_t>(params.temperature.window)) {
            throw Error(ErrorKind::validation,
                        "insufficient data at level " + std::to_string(lvl) +
                            ": " + std::to_string(current.size()) +
                            " samples < window " +
                            std::to_string(params.temperature.window));
        }
        TemperatureParams tp = params.temperature;
        tp.dt = dt;
        stack.levels.push_back(estimate_temperature(current, tp));
        for (std::size_t i = 0; i < current.size(); ++i) {
            stack.alignment.push_back({static_cast<int>(lvl), current.timestamps[i],
                                       cover[i].first, cover[i].second});
        }
        if (lvl + 1 == n_levels) break;

        const BlockPartition& part = partitions[lvl];
        part.validate(current.size());
        WeightProfile w = params.weights == WeightSource::volume && current.has_volumes()
                              ? block_weights_from_volume(current, part)
                              : uniform_weights(part);
        // Default dt for the next level: mean block duration of this one.
        if (params.dt_per_level.empty()) {
            dt *= static_cast<double>(current.size()) /
                  static_cast<double>(part.block_count());
        } else {
            dt = params.dt_per_level[lvl + 1];
        }
        std::vector<std::pair<std::size_t, std::size_t>> next_cover;
        next_cover.reserve(part.block_count());
        for (const auto& r : part.ranges) {
            next_cover.emplace_back(cover[r.begin].first, cover[r.end - 1].second);
        }
        current = renormalize_series(current, part, w, params.mode);
        cover = std::move(next_cover);
    }
    return stack;
}

TemperatureStack temperature_stack(const PriceSeries& series,
                                   const std::vector<BlockPartition>& partitions,
                                   int window, std::vector<double> dt_per_level) {
    StackParams p;
    p.temperature.window = window;
    p.dt_per_level = std::move(dt_per_level);
    return temperature_stack(series, partitions, p);
}

}  // namespace spinmarket
