#include "spinmarket/renorm_map.hpp"

#include <algorithm>
#include <cmath>

#include "spinmarket/errors.hpp"
#include "spinmarket/rng.hpp"

namespace spinmarket {

namespace {
using cplx = std::complex<double>;
constexpr double kJuliaResidual = 1e-10;
}  // namespace

double dhl_renorm_apply(double t) {
    const double den = 1.0 + t * t * t * t;
    if (den == 0.0) throw_numeric("pole of the renormalization map");
    return 2.0 * t * t / den;
}

cplx dhl_renorm_apply(cplx t) {
    const cplx t2 = t * t;
    const cplx den = 1.0 + t2 * t2;
    // Points within rounding distance of the pole set t^4 = -1 have no
    // meaningful image in double precision.
    if (std::abs(den) <= 1e-12 * (1.0 + std::norm(t2))) {
        throw_numeric("pole of the renormalization map");
    }
    return 2.0 * t2 / den;
}

double dhl_renorm_derivative(double t) {
    const double t4 = t * t * t * t;
    const double den = (1.0 + t4) * (1.0 + t4);
    if (den == 0.0) throw_numeric("pole of the renormalization map");
    return 4.0 * t * (1.0 - t4) / den;
}

FixedPointResult find_fixed_point(double lo, double hi) {
    if (!(lo < hi)) throw_validation("bracket must satisfy lo < hi");
    auto f = [](double t) { return dhl_renorm_apply(t) - t; };
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) hi = lo;
    else if (fhi == 0.0) lo = hi;
    else if (flo * fhi > 0.0) {
        throw_validation("bracket does not straddle a fixed point");
    }

    double a = lo, b = hi, x = 0.5 * (a + b);
    for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(x)); ++it) {
        // Newton step, safeguarded by bisection when it leaves the bracket.
        const double fx = f(x);
        if (fx == 0.0) break;
        const double dfx = dhl_renorm_derivative(x) - 1.0;
        double nx = dfx != 0.0 ? x - fx / dfx : a - 1.0;
        if (!(nx > a && nx < b)) nx = 0.5 * (a + b);
        const double fnx = f(nx);
        if ((f(a) < 0.0) == (fnx < 0.0)) a = nx;
        else b = nx;
        x = nx;
    }

    FixedPointResult res;
    res.t_star = x;
    const double analytic = std::abs(dhl_renorm_derivative(x));
    const double step = 1e-6 * std::max(1.0, std::abs(x));
    const double fd =
        std::abs((dhl_renorm_apply(x + step) - dhl_renorm_apply(x - step)) /
                 (2.0 * step));
    if (std::abs(analytic - fd) > 1e-6) {
        throw_numeric("analytic and finite-difference multipliers disagree");
    }
    res.multiplier = analytic;
    return res;
}

RenormMap RenormMap::dhl_ising() {
    RenormMap map;
    map.fixed_points.push_back(find_fixed_point(-0.1, 0.1));
    map.fixed_points.push_back(find_fixed_point(0.3, 0.8));
    return map;
}

FixedPointResult find_fixed_point(const RenormMap&, double lo, double hi) {
    return find_fixed_point(lo, hi);
}

JuliaCloud julia_inverse_iteration(cplx seed, int generations, std::size_t cap,
                                   std::uint64_t rng_seed) {
    if (generations < 0) throw_validation("generations must be >= 0");
    if (cap < 1) throw_validation("cap must be >= 1");

    JuliaCloud cloud;
    cloud.generations = generations;
    cloud.points.push_back(seed);
    cloud.parents.push_back(cplx(std::nan(""), std::nan("")));

    Rng rng(rng_seed);
    std::vector<cplx> frontier{seed};
    for (int gen = 1; gen <= generations && cloud.points.size() < cap; ++gen) {
        std::vector<std::pair<cplx, cplx>> children;  // (point, parent)
        children.reserve(frontier.size() * 4);
        for (const cplx w : frontier) {
            if (std::abs(w) < 1e-300) {
                // R(t) = 0 has the double solution t = 0.
                children.emplace_back(cplx(0.0, 0.0), w);
                continue;
            }
            const cplx s = std::sqrt(1.0 - w * w);
            const std::size_t first_child = children.size();
            for (int branch = 0; branch < 2; ++branch) {
                const cplx q = (branch == 0 ? 1.0 + s : 1.0 - s) / w;
                const cplx root = std::sqrt(q);
                for (int sign = 0; sign < 2; ++sign) {
                    const cplx t = sign == 0 ? root : -root;
                    const cplx t2 = t * t;
                    const cplx den = 1.0 + t2 * t2;
                    if (std::abs(den) <= 1e-12 * (1.0 + std::norm(t2))) {
                        ++cloud.skipped;  // pole set, same guard as the map
                        continue;
                    }
                    const cplx image = 2.0 * t2 / den;
                    if (std::abs(image - w) > kJuliaResidual) {
                        ++cloud.skipped;
                        continue;
                    }
                    bool dup = false;  // degenerate branches coincide, e.g. w = 1
                    for (std::size_t k = first_child; k < children.size(); ++k) {
                        if (children[k].first == t) {
                            dup = true;
                            break;
                        }
                    }
                    if (!dup) children.emplace_back(t, w);
                }
            }
        }
        // Random branch sampling once the budget is tight.
        const std::size_t room = cap - cloud.points.size();
        if (children.size() > room) {
            for (std::size_t i = children.size(); i-- > 1;) {
                std::swap(children[i], children[rng.index_below(i + 1)]);
            }
            children.resize(room);
        }
        frontier.clear();
        for (const auto& [pt, parent] : children) {
            cloud.points.push_back(pt);
            cloud.parents.push_back(parent);
            frontier.push_back(pt);
        }
        if (frontier.empty()) break;
    }
    return cloud;
}

JuliaCloud julia_inverse_iteration(const RenormMap&, cplx seed, int generations,
                                   std::size_t cap, std::uint64_t rng_seed) {
    return julia_inverse_iteration(seed, generations, cap, rng_seed);
}

}  // namespace spinmarket
