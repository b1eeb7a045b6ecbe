#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "spinmarket/rng.hpp"

namespace spinmarket {

/// Spin-1/2 chain on a 1D ring with nearest-neighbor coupling J and
/// external field h at inverse temperature beta (may be negative).
struct SpinSystem {
    int n_sites = 0;
    double coupling_j = 0.0;
    double field_h = 0.0;
    double beta = 1.0;
    std::vector<std::int8_t> spins;  // each exactly +1 or -1
    std::uint64_t rng_seed = 0;

    static SpinSystem aligned(int n_sites, double j, double h, double beta,
                              std::uint64_t seed, int direction = +1);

    double magnetization() const;
    double energy_per_spin() const;

    void validate() const;
};

/// Effective inverse temperature of a trace step. The temperature diverges
/// (|T| -> inf) where the magnetization crosses zero in a nonzero field;
/// those steps carry a signed divergence marker instead of a finite value.
struct BetaEff {
    enum class Kind { finite, pos_inf_marker, neg_inf_marker };
    Kind kind = Kind::finite;
    double value = 0.0;  // atanh(m)/h when finite

    bool is_marker() const { return kind != Kind::finite; }
};

// atanh(m)/h; prev_sign picks the marker side when m == 0 and h != 0.
BetaEff beta_effective(double m, double h, int prev_sign = +1);

struct TraceStep {
    std::int64_t step = 0;
    double magnetization = 0.0;
    double field_h = 0.0;
    BetaEff beta_eff;
};

struct ScenarioTrace {
    std::vector<TraceStep> steps;
};

struct EntropyCurvePoint {
    double energy_per_spin = 0.0;
    double entropy_per_spin = 0.0;  // in [0, ln 2]
};

struct EntropyCurve {
    std::vector<EntropyCurvePoint> points;  // sorted by energy
    double coupling_j = 0.0;
    int n_sites = 0;
};

struct HysteresisLoop {
    std::vector<std::pair<double, double>> branch_down;  // (field_h, mean m)
    std::vector<std::pair<double, double>> branch_up;
    double loop_area = 0.0;  // dissipated work per cycle, closed-path integral of h dm
};

/// n_sweeps full-lattice sweeps of single-site Metropolis updates.
/// Draw order per update: site index, then acceptance uniform (always
/// consumed). The returned system carries a freshly drawn rng_seed so that
/// chained calls continue the stream instead of replaying it.
SpinSystem metropolis_sweep(SpinSystem system, long n_sweeps);

// In-place flavor used by the scenario drivers; shares the caller's stream.
void metropolis_updates(SpinSystem& system, Rng& rng, long n_sweeps);

/// Exact density of states over (bond sum, magnetization sum) for the ring,
/// grouped by energy per spin. Counts are exact for n_sites <= 24.
std::vector<std::pair<double, double>> density_of_states(double coupling_j,
                                                         double field_h,
                                                         int n_sites);

EntropyCurve entropy_curve(double coupling_j, double field_h, int n_sites);

/// Field cycle +h_max -> -h_max -> +h_max (or the reverse when
/// start_down = false). Mean magnetization is recorded at each field step,
/// averaged over sweeps_per_step sweeps.
HysteresisLoop hysteresis_loop(SpinSystem system, double h_max,
                               int n_field_steps, long sweeps_per_step,
                               bool start_down = true);

/// Relaxation run where the field is negated at flip_time. Each step records
/// the state at the start of the step (after any field change), then one
/// sweep is performed.
ScenarioTrace population_inversion_run(SpinSystem system, long flip_time,
                                       long total_steps);

/// Quasi-static adiabatic demagnetization of the ideal paramagnet:
/// magnetization is held at tanh(beta*h) while h ramps linearly to zero.
ScenarioTrace magnetocaloric_run(double initial_beta, double initial_h,
                                 int n_ramp_steps);

}  // namespace spinmarket
