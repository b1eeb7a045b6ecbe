#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "spinmarket/series.hpp"

namespace spinmarket {

/// Contiguous, non-overlapping index ranges covering a series.
/// Ranges are half-open [begin, end).
struct BlockPartition {
    struct Range {
        std::size_t begin = 0;
        std::size_t end = 0;
    };
    std::vector<Range> ranges;

    std::size_t block_count() const { return ranges.size(); }
    void validate(std::size_t n_samples) const;

    static BlockPartition fixed(std::size_t n_samples, std::size_t block_size);
    static BlockPartition singletons(std::size_t n_samples);
    /// One block per UTC day of the timestamps.
    static BlockPartition by_day(std::span<const std::int64_t> timestamps_ms);
};

struct WeightProfile {
    std::vector<std::vector<double>> weights_per_block;  // each sums to 1

    void validate(const BlockPartition& partition) const;
};

/// Per block, volumes normalized to sum 1; an all-zero-volume block falls
/// back to uniform weights.
WeightProfile block_weights_from_volume(const PriceSeries& series,
                                        const BlockPartition& partition);
WeightProfile uniform_weights(const BlockPartition& partition);

enum class RenormMode {
    weighted_all,     // convex combination of every sample in the block
    open_close_only,  // block's first/last prices with their two volumes
};

/// One output sample per block: the weighted value, stamped at the block's
/// closing timestamp, level incremented, volumes aggregated by sum.
PriceSeries renormalize_series(const PriceSeries& series,
                               const BlockPartition& partition,
                               const WeightProfile& weights,
                               RenormMode mode = RenormMode::weighted_all);

/// Temperatures at renormalization levels 0..L, with every sample mapped
/// back to the level-0 index range it covers.
struct TemperatureStack {
    struct Alignment {
        int level = 0;
        std::int64_t timestamp = 0;
        std::size_t level0_begin = 0;  // inclusive level-0 sample indices
        std::size_t level0_end = 0;
    };
    std::vector<TemperatureSeries> levels;
    std::vector<Alignment> alignment;
};

enum class WeightSource { volume, uniform };

struct StackParams {
    TemperatureParams temperature;           // window, dt for level 0, sign params
    std::vector<double> dt_per_level;        // empty: derived from block sizes
    WeightSource weights = WeightSource::volume;
    RenormMode mode = RenormMode::weighted_all;
};

/// Level-0 temperature, then renormalize and re-estimate per level
/// (partitions[k] maps level k to level k+1).
TemperatureStack temperature_stack(const PriceSeries& series,
                                   const std::vector<BlockPartition>& partitions,
                                   const StackParams& params);
TemperatureStack temperature_stack(const PriceSeries& series,
                                   const std::vector<BlockPartition>& partitions,
                                   int window, std::vector<double> dt_per_level);

}  // namespace spinmarket
