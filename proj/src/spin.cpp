#include "spinmarket/spin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>

#include "spinmarket/errors.hpp"

namespace spinmarket {

SpinSystem SpinSystem::aligned(int n_sites, double j, double h, double beta,
                               std::uint64_t seed, int direction) {
    SpinSystem s;
    s.n_sites = n_sites;
    s.coupling_j = j;
    s.field_h = h;
    s.beta = beta;
    s.rng_seed = seed;
    s.spins.assign(static_cast<std::size_t>(std::max(n_sites, 0)),
                   direction >= 0 ? std::int8_t{1} : std::int8_t{-1});
    s.validate();
    return s;
}

double SpinSystem::magnetization() const {
    long sum = 0;
    for (auto s : spins) sum += s;
    return static_cast<double>(sum) / static_cast<double>(n_sites);
}

double SpinSystem::energy_per_spin() const {
    const int n = n_sites;
    double bond = 0.0;
    for (int i = 0; i < n; ++i) {
        bond += static_cast<double>(spins[i]) * spins[(i + 1) % n];
    }
    long mag = 0;
    for (auto s : spins) mag += s;
    return -(coupling_j * bond + field_h * static_cast<double>(mag)) / n;
}

void SpinSystem::validate() const {
    if (n_sites < 1) throw_validation("n_sites must be >= 1");
    if (!std::isfinite(coupling_j) || !std::isfinite(field_h) || !std::isfinite(beta)) {
        throw_validation("beta, J and h must be finite");
    }
    if (spins.size() != static_cast<std::size_t>(n_sites)) {
        throw_validation("spin vector length does not match n_sites");
    }
    for (auto s : spins) {
        if (s != 1 && s != -1) throw_validation("spins must be +1 or -1");
    }
}

BetaEff beta_effective(double m, double h, int prev_sign) {
    BetaEff b;
    if (m == 0.0 && h != 0.0) {
        b.kind = prev_sign < 0 ? BetaEff::Kind::neg_inf_marker
                               : BetaEff::Kind::pos_inf_marker;
        b.value = prev_sign < 0 ? -std::numeric_limits<double>::infinity()
                                : std::numeric_limits<double>::infinity();
        return b;
    }
    if (h == 0.0) {
        // atanh(m)/0: fully undetermined only at m == 0, where beta is 0.
        b.value = m == 0.0 ? 0.0
                           : std::copysign(std::numeric_limits<double>::infinity(),
                                           std::atanh(m));
        return b;
    }
    b.value = std::atanh(m) / h;
    return b;
}

namespace {

// Energy change of flipping site i. On the ring both neighbors of the
// single site of an n=1 system are the site itself, so the bond term
// is constant and drops out.
inline double flip_delta_e(const SpinSystem& sys, int i) {
    const int n = sys.n_sites;
    const double s = sys.spins[static_cast<std::size_t>(i)];
    if (n == 1) return 2.0 * s * sys.field_h;
    const double left = sys.spins[static_cast<std::size_t>((i + n - 1) % n)];
    const double right = sys.spins[static_cast<std::size_t>((i + 1) % n)];
    return 2.0 * s * (sys.coupling_j * (left + right) + sys.field_h);
}

}  // namespace

void metropolis_updates(SpinSystem& sys, Rng& rng, long n_sweeps) {
    sys.validate();
    const int n = sys.n_sites;
    for (long sweep = 0; sweep < n_sweeps; ++sweep) {
        for (int k = 0; k < n; ++k) {
            const int i = static_cast<int>(rng.index_below(static_cast<std::size_t>(n)));
            const double de = flip_delta_e(sys, i);
            const double u = rng.uniform();
            if (de <= 0.0 || u < std::exp(-sys.beta * de)) {
                sys.spins[static_cast<std::size_t>(i)] =
                    static_cast<std::int8_t>(-sys.spins[static_cast<std::size_t>(i)]);
            }
        }
    }
}

SpinSystem metropolis_sweep(SpinSystem system, long n_sweeps) {
    if (n_sweeps < 0) throw_validation("n_sweeps must be >= 0");
    Rng rng(system.rng_seed);
    metropolis_updates(system, rng, n_sweeps);
    system.rng_seed = rng.next_u64();
    return system;
}

std::vector<std::pair<double, double>> density_of_states(double coupling_j,
                                                         double field_h,
                                                         int n_sites) {
    if (n_sites < 1) throw_validation("n_sites must be >= 1");
    if (n_sites > 24) {
        throw Error(ErrorKind::validation,
                    "n_sites > 24 exceeds the exact-enumeration budget");
    }
    if (!std::isfinite(coupling_j) || !std::isfinite(field_h)) {
        throw_validation("J and h must be finite");
    }

    const int n = n_sites;
    // dp[first][cur][b][m]: number of chains s_1..s_i with fixed first and
    // current spin, accumulated bond sum index b and magnetization index m.
    // Indices store (sum + n)/2 shifted into [0, n]. Counts stay below 2^24
    // so doubles hold them exactly.
    const int dim = n + 1;
    auto idx = [dim](int first, int cur, int b, int m) {
        return ((first * 2 + cur) * dim + b) * dim + m;
    };
    std::vector<double> dp(static_cast<std::size_t>(4 * dim * dim), 0.0);
    std::vector<double> next(dp.size(), 0.0);

    // site 1: no bonds yet, magnetization = s1
    for (int s1 = 0; s1 < 2; ++s1) {
        const int spin = s1 == 0 ? -1 : 1;
        dp[static_cast<std::size_t>(idx(s1, s1, 0, (spin + 1) / 2))] = 1.0;
    }
    // m index bookkeeping: after i sites the mag sum is in [-i, i]; store
    // (sum + i)/2 which fits in [0, i]. Rebasing happens implicitly because
    // adding a site shifts the offset by one for down spins and keeps +1
    // steps for up spins.
    for (int site = 2; site <= n; ++site) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int first = 0; first < 2; ++first) {
            for (int cur = 0; cur < 2; ++cur) {
                for (int b = 0; b <= site - 2; ++b) {
                    for (int m = 0; m <= site - 1; ++m) {
                        const double c = dp[static_cast<std::size_t>(idx(first, cur, b, m))];
                        if (c == 0.0) continue;
                        for (int nxt = 0; nxt < 2; ++nxt) {
                            const int bond = (cur == nxt) ? 1 : 0;  // +1 or -1 bond, store agreements
                            const int b2 = b + bond;
                            const int m2 = m + nxt;  // up spins add 1 to the shifted index... see below
                            next[static_cast<std::size_t>(idx(first, nxt, b2, m2))] += c;
                        }
                    }
                }
            }
        }
        dp.swap(next);
    }

    // Close the ring: bond between site n and site 1.
    // Shifted indices: after n sites, agreements a in [0, n-1] over chain
    // bonds, ups u in [0, n]. Bond sum B = 2*(a + closing) - n,
    // magnetization M = 2u - n.
    std::map<double, double> by_energy;
    for (int first = 0; first < 2; ++first) {
        for (int cur = 0; cur < 2; ++cur) {
            for (int a = 0; a <= n - 1; ++a) {
                for (int u = 0; u <= n; ++u) {
                    const double c = dp[static_cast<std::size_t>(idx(first, cur, a, u))];
                    if (c == 0.0) continue;
                    int agreements = a;
                    if (n > 1) agreements += (cur == first) ? 1 : 0;
                    else agreements = 1;  // single site: the self-bond always agrees
                    const int bonds_total = n;
                    const double b_sum = 2.0 * agreements - bonds_total;
                    const double m_sum = 2.0 * u - n;
                    const double e = -(coupling_j * b_sum + field_h * m_sum) / n;
                    by_energy[e] += c;
                }
            }
        }
    }

    std::vector<std::pair<double, double>> out(by_energy.begin(), by_energy.end());
    return out;
}

EntropyCurve entropy_curve(double coupling_j, double field_h, int n_sites) {
    const auto dos = density_of_states(coupling_j, field_h, n_sites);
    EntropyCurve curve;
    curve.coupling_j = coupling_j;
    curve.n_sites = n_sites;
    curve.points.reserve(dos.size());
    for (const auto& [e, g] : dos) {
        curve.points.push_back({e, std::log(g) / n_sites});
    }
    return curve;
}

namespace {

double measure_mean_m(SpinSystem& sys, Rng& rng, long sweeps) {
    double acc = 0.0;
    for (long s = 0; s < sweeps; ++s) {
        metropolis_updates(sys, rng, 1);
        acc += sys.magnetization();
    }
    return acc / static_cast<double>(sweeps);
}

}  // namespace

HysteresisLoop hysteresis_loop(SpinSystem system, double h_max,
                               int n_field_steps, long sweeps_per_step,
                               bool start_down) {
    system.validate();
    if (h_max < 0.0) throw_validation("h_max must be >= 0");
    if (n_field_steps < 2) throw_validation("n_field_steps must be >= 2");
    if (sweeps_per_step < 1) throw_validation("sweeps_per_step must be >= 1");

    Rng rng(system.rng_seed);
    std::vector<double> grid(static_cast<std::size_t>(n_field_steps));
    for (int k = 0; k < n_field_steps; ++k) {
        grid[static_cast<std::size_t>(k)] =
            h_max - 2.0 * h_max * k / (n_field_steps - 1);  // +h_max .. -h_max
    }

    HysteresisLoop loop;
    auto run_branch = [&](bool descending) {
        std::vector<std::pair<double, double>> branch;
        branch.reserve(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double h = descending ? grid[k] : grid[grid.size() - 1 - k];
            system.field_h = h;
            const double m = measure_mean_m(system, rng, sweeps_per_step);
            branch.emplace_back(h, m);
        }
        return branch;
    };

    // Equilibrate at the starting field before the first branch.
    system.field_h = start_down ? h_max : -h_max;
    metropolis_updates(system, rng, sweeps_per_step);

    if (start_down) {
        loop.branch_down = run_branch(true);
        loop.branch_up = run_branch(false);
    } else {
        loop.branch_up = run_branch(false);
        loop.branch_down = run_branch(true);
    }

    // Dissipated work per cycle: closed-path trapezoidal integral of h dm.
    // Equals -(integral of m dh) around the same closed path.
    std::vector<std::pair<double, double>> path;
    if (start_down) {
        path = loop.branch_down;
        path.insert(path.end(), loop.branch_up.begin(), loop.branch_up.end());
    } else {
        path = loop.branch_up;
        path.insert(path.end(), loop.branch_down.begin(), loop.branch_down.end());
    }
    double area = 0.0;
    for (std::size_t i = 0; i < path.size(); ++i) {
        const auto& [h0, m0] = path[i];
        const auto& [h1, m1] = path[(i + 1) % path.size()];
        area += 0.5 * (h0 + h1) * (m1 - m0);
    }
    loop.loop_area = area;
    return loop;
}

ScenarioTrace population_inversion_run(SpinSystem system, long flip_time,
                                       long total_steps) {
    system.validate();
    if (total_steps < 1) throw_validation("total_steps must be >= 1");
    if (flip_time >= total_steps) {
        throw_validation("flip_time must be < total_steps");
    }
    if (flip_time < 0) throw_validation("flip_time must be >= 0");

    Rng rng(system.rng_seed);
    ScenarioTrace trace;
    trace.steps.reserve(static_cast<std::size_t>(total_steps));
    int prev_sign = +1;
    for (long step = 0; step < total_steps; ++step) {
        if (step == flip_time) system.field_h = -system.field_h;
        const double m = system.magnetization();
        const BetaEff be = beta_effective(m, system.field_h, prev_sign);
        if (!be.is_marker() && be.value != 0.0) {
            prev_sign = be.value < 0 ? -1 : +1;
        }
        trace.steps.push_back({step, m, system.field_h, be});
        metropolis_updates(system, rng, 1);
    }
    return trace;
}

ScenarioTrace magnetocaloric_run(double initial_beta, double initial_h,
                                 int n_ramp_steps) {
    if (!(initial_beta > 0.0) || !std::isfinite(initial_beta)) {
        throw_validation("initial_beta must be positive and finite");
    }
    if (!(initial_h > 0.0) || !std::isfinite(initial_h)) {
        throw_validation("initial_h must be positive and finite");
    }
    if (n_ramp_steps < 1) throw_validation("n_ramp_steps must be >= 1");

    const double m0 = std::tanh(initial_beta * initial_h);
    if (m0 == 0.0) {
        throw Error(ErrorKind::validation,
                    "degenerate state: initial magnetization is zero, "
                    "T_eff is undefined under the constant-m rule");
    }

    ScenarioTrace trace;
    trace.steps.reserve(static_cast<std::size_t>(n_ramp_steps) + 1);
    const double atanh_m0 = std::atanh(m0);
    for (int k = 0; k <= n_ramp_steps; ++k) {
        const double h = initial_h * static_cast<double>(n_ramp_steps - k) /
                         static_cast<double>(n_ramp_steps);
        BetaEff be;
        be.value = atanh_m0 / h;  // +inf at the final h = 0 step
        trace.steps.push_back({k, m0, h, be});
    }
    return trace;
}

}  // namespace spinmarket
