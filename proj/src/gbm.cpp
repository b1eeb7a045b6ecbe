#include "spinmarket/gbm.hpp"

#include <cmath>

#include "spinmarket/errors.hpp"
#include "spinmarket/rng.hpp"

namespace spinmarket {

PriceSeries generate_gbm(const GbmParams& p) {
    if (!(p.s0 > 0.0)) throw_validation("s0 must be > 0");
    if (!(p.sigma >= 0.0)) throw_validation("sigma must be >= 0");
    if (!(p.dt > 0.0)) throw_validation("dt must be > 0");
    if (p.n < 1) throw_validation("n must be >= 1");
    if (!std::isfinite(p.mu)) throw_validation("mu must be finite");
    if (p.tick_ms < 1) throw_validation("tick_ms must be >= 1");
    if (p.volumes == VolumePattern::u_shape && p.day_length < 2) {
        throw_validation("u-shape volumes need day_length >= 2");
    }

    PriceSeries out;
    out.level = 0;
    out.timestamps.resize(p.n);
    out.prices.resize(p.n);
    out.volumes.resize(p.n);

    Rng rng(p.seed);
    const double drift = (p.mu - 0.5 * p.sigma * p.sigma) * p.dt;
    const double diffusion = p.sigma * std::sqrt(p.dt);
    double log_p = 0.0;
    for (std::size_t k = 0; k < p.n; ++k) {
        out.timestamps[k] = p.t0_ms + static_cast<std::int64_t>(k) * p.tick_ms;
        out.prices[k] = p.s0 * std::exp(log_p);
        log_p += drift + diffusion * rng.normal();

        if (p.volumes == VolumePattern::flat) {
            out.volumes[k] = 1.0;
        } else {
            const std::size_t j = k % p.day_length;
            const double x = 2.0 * static_cast<double>(j) /
                                 static_cast<double>(p.day_length - 1) -
                             1.0;
            out.volumes[k] = 1.0 + 4.0 * x * x;  // 5x heavier at the auctions
        }
    }
    out.validate();
    return out;
}

PriceSeries generate_gbm(double s0, double mu, double sigma, double dt,
                         std::size_t n, std::uint64_t seed) {
    GbmParams p;
    p.s0 = s0;
    p.mu = mu;
    p.sigma = sigma;
    p.dt = dt;
    p.n = n;
    p.seed = seed;
    return generate_gbm(p);
}

}  // namespace spinmarket
