#pragma once

#include <cstdint>
#include <vector>

#include "spinmarket/blocks.hpp"

namespace spinmarket {

/// A level-0 instant where all renormalization levels carry (causally
/// aligned) temperatures of one sign agreeing within tolerance.
struct SignalEvent {
    std::int64_t timestamp = 0;
    std::vector<double> level_values;          // one per level
    std::vector<std::int64_t> level_timestamps;  // sample each value came from
    double relative_spread = 0.0;  // (max-min)/max(|mean|, floor)
};

/// Walks the level-0 timeline; at each instant every level contributes its
/// latest sample at or before that instant. Instants qualify when the
/// relative spread is below tolerance and all values share one strict sign;
/// consecutive qualifying instants merge into one event at the run start.
std::vector<SignalEvent> detect_transitions(const TemperatureStack& stack,
                                            double tolerance, double floor_value);

}  // namespace spinmarket
