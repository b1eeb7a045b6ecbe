#pragma once

#include <cstdint>

#include "spinmarket/series.hpp"

namespace spinmarket {

enum class VolumePattern {
    flat,    // every sample volume 1
    u_shape, // parabolic day profile, heavier at open/close
};

struct GbmParams {
    double s0 = 100.0;
    double mu = 0.0;
    double sigma = 0.2;
    double dt = 1.0 / 252.0;  // step in the series' natural time unit
    std::size_t n = 1000;     // series length (samples)
    std::uint64_t seed = 0;
    std::int64_t t0_ms = 0;
    std::int64_t tick_ms = 60'000;
    VolumePattern volumes = VolumePattern::flat;
    std::size_t day_length = 0;  // samples per day for the u-shape profile
};

/// p_{k+1} = p_k * exp((mu - sigma^2/2) dt + sigma sqrt(dt) xi_k) with xi
/// standard normal from the seeded generator; deterministic per seed.
PriceSeries generate_gbm(const GbmParams& params);
PriceSeries generate_gbm(double s0, double mu, double sigma, double dt,
                         std::size_t n, std::uint64_t seed);

}  // namespace spinmarket
