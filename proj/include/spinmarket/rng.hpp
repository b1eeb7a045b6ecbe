#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace spinmarket {

// Seedable generator with a fixed, documented draw order so every trace is
// reproducible bit-for-bit. Distributions are implemented here instead of
// through <random>'s distribution classes, whose output is not pinned down
// by the standard.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform double in [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform index in [0, n). Modulo bias is < 2^-50 for any n used here.
    std::size_t index_below(std::size_t n) {
        return static_cast<std::size_t>(gen_() % n);
    }

    // Standard normal via Box-Muller; consumes two uniforms per pair,
    // the cosine value is returned first.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();  // guard log(0)
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace spinmarket
