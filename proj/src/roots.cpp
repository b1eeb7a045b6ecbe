#include "spinmarket/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "spinmarket/errors.hpp"
#include "spinmarket/format.hpp"

namespace spinmarket {

namespace {

using cplx = std::complex<double>;

struct PolyEval {
    cplx p;
    cplx dp;
};

PolyEval eval_with_derivative(std::span<const double> c, cplx z) {
    cplx p = 0.0, dp = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[k];
    }
    return {p, dp};
}

// Horner on |c_k| at |z|: the natural backward-error scale for P(z).
double eval_scale(std::span<const double> c, double az) {
    double s = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) {
        s = s * az + std::abs(c[k]);
    }
    return s;
}

std::vector<double> derivative_normalized(const std::vector<double>& c) {
    std::vector<double> d(c.size() > 1 ? c.size() - 1 : 0, 0.0);
    double mx = 0.0;
    for (std::size_t k = 1; k < c.size(); ++k) {
        d[k - 1] = c[k] * static_cast<double>(k);
        mx = std::max(mx, std::abs(d[k - 1]));
    }
    if (mx > 0.0) {
        for (auto& v : d) v /= mx;  // scale is irrelevant for root location
    }
    return d;
}

struct DisjointSet {
    std::vector<std::size_t> parent;
    explicit DisjointSet(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    }
    std::size_t find(std::size_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[a] = b;
    }
};

// Collapse confirmed root clusters of multiplicity m onto the nearby simple
// root of P^(m-1). An m-fold root computed by simultaneous iteration comes
// out as a noise circle of radius ~eps^(1/m); its members' inclusion disks
// n|P/P'| overlap, the cluster mean sits close to the true root, and Newton
// on the (m-1)-th derivative recovers it to full precision. The hypothesis
// is only accepted if P and its first m-1 derivatives all vanish at the
// refined point relative to their own evaluation scales, so genuinely
// distinct-but-close roots are left untouched. Returns true if any cluster
// was collapsed; a noise circle can fragment into sub-clusters on the first
// pass, so the caller repeats until stable.
bool refine_clusters_once(const std::vector<double>& coeffs, std::vector<cplx>& z) {
    const std::size_t n = z.size();
    std::vector<double> radius(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ev = eval_with_derivative(coeffs, z[i]);
        radius[i] = ev.dp == 0.0 ? std::numeric_limits<double>::infinity()
                                 : static_cast<double>(n) * std::abs(ev.p / ev.dp);
    }
    DisjointSet ds(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(z[i] - z[j]) <= radius[i] + radius[j]) ds.unite(i, j);
        }
    }
    std::vector<std::vector<std::size_t>> groups(n);
    for (std::size_t i = 0; i < n; ++i) groups[ds.find(i)].push_back(i);

    bool changed = false;
    for (const auto& g : groups) {
        const std::size_t m = g.size();
        if (m < 2) continue;
        cplx center = 0.0;
        for (auto i : g) center += z[i];
        center /= static_cast<double>(m);

        std::vector<double> dm(coeffs);
        for (std::size_t k = 1; k < m; ++k) dm = derivative_normalized(dm);
        cplx x = center;
        for (int it = 0; it < 100; ++it) {
            const auto ev = eval_with_derivative(dm, x);
            if (ev.dp == 0.0) break;
            const cplx step = ev.p / ev.dp;
            x -= step;
            if (std::abs(step) <= 1e-16 * (1.0 + std::abs(x))) break;
        }

        bool confirmed = true;
        std::vector<double> dj(coeffs);
        for (std::size_t jd = 0; jd < m; ++jd) {
            const auto ev = eval_with_derivative(dj, x);
            const double scale = eval_scale(dj, std::abs(x));
            if (std::abs(ev.p) > 1e-7 * scale * std::max(1.0, std::abs(x))) {
                confirmed = false;
                break;
            }
            dj = derivative_normalized(dj);
        }
        if (!confirmed) continue;
        for (auto i : g) {
            if (z[i] != x) changed = true;
            z[i] = x;
        }
    }
    return changed;
}

void refine_clusters(const std::vector<double>& coeffs, std::vector<cplx>& z) {
    for (int pass = 0; pass < 4; ++pass) {
        if (!refine_clusters_once(coeffs, z)) break;
    }
}

// The true root multiset of a real polynomial is conjugate-symmetric, but a
// computed configuration need not be (Gauss-Seidel updates break the
// symmetry, and ill-conditioned clusters scatter asymmetrically). Matched
// pairs get averaged; matching is globally greedy over all (i, j) candidate
// distances so one root cannot steal another's partner. Leftovers are paired
// with each other across the axis, which keeps them inside the low-residual
// neighborhood they came from instead of teleporting them onto the axis.
void enforce_conjugate_pairs(std::vector<cplx>& z) {
    const double snap = 1e-9;
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (std::abs(z[i].imag()) <= snap * (1.0 + std::abs(z[i]))) {
            z[i] = cplx(z[i].real(), 0.0);
        } else if (z[i].imag() > 0) {
            pos.push_back(i);
        } else {
            neg.push_back(i);
        }
    }

    struct Candidate {
        double dist;
        std::size_t pi, ni;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(pos.size() * neg.size());
    for (std::size_t a = 0; a < pos.size(); ++a) {
        for (std::size_t b = 0; b < neg.size(); ++b) {
            candidates.push_back(
                {std::abs(z[pos[a]] - std::conj(z[neg[b]])), a, b});
        }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) { return a.dist < b.dist; });
    std::vector<bool> pos_done(pos.size(), false), neg_done(neg.size(), false);
    for (const auto& cand : candidates) {
        if (pos_done[cand.pi] || neg_done[cand.ni]) continue;
        pos_done[cand.pi] = true;
        neg_done[cand.ni] = true;
        const cplx avg = 0.5 * (z[pos[cand.pi]] + std::conj(z[neg[cand.ni]]));
        z[pos[cand.pi]] = avg;
        z[neg[cand.ni]] = std::conj(avg);
    }

    std::vector<std::size_t> leftovers;
    for (std::size_t a = 0; a < pos.size(); ++a) {
        if (!pos_done[a]) leftovers.push_back(pos[a]);
    }
    for (std::size_t b = 0; b < neg.size(); ++b) {
        if (!neg_done[b]) leftovers.push_back(neg[b]);
    }
    std::sort(leftovers.begin(), leftovers.end(), [&z](std::size_t a, std::size_t b) {
        if (z[a].real() != z[b].real()) return z[a].real() < z[b].real();
        return z[a].imag() < z[b].imag();
    });
    for (std::size_t k = 0; k + 1 < leftovers.size(); k += 2) {
        const std::size_t i = leftovers[k], j = leftovers[k + 1];
        const cplx w = 0.5 * (z[i] + std::conj(z[j]));
        z[i] = w;
        z[j] = std::conj(w);
    }
    if (leftovers.size() % 2 == 1) {
        const std::size_t i = leftovers.back();
        z[i] = cplx(z[i].real(), 0.0);
    }
}

}  // namespace

ZeroSet find_polynomial_zeros(std::span<const double> ascending_coeffs,
                              const RootFinderOptions& opts) {
    std::vector<double> c(ascending_coeffs.begin(), ascending_coeffs.end());
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    if (c.size() < 2) throw_validation("polynomial degree must be >= 1");

    ZeroSet out;
    // Factor out exact zero roots first.
    std::size_t zero_roots = 0;
    while (c.size() > 1 && c.front() == 0.0) {
        c.erase(c.begin());
        ++zero_roots;
    }
    const std::size_t deg = c.size() - 1;
    std::vector<cplx> z(deg);
    if (deg >= 1) {
        double top = 0.0;
        for (std::size_t k = 0; k + 1 < c.size(); ++k) top = std::max(top, std::abs(c[k]));
        const double radius = std::pow(top / std::abs(c.back()),
                                       1.0 / static_cast<double>(deg));
        const double eps_floor =
            20.0 * static_cast<double>(deg) * std::numeric_limits<double>::epsilon();

        auto worst_residual = [&](const std::vector<cplx>& roots) {
            double worst = 0.0;
            for (const auto& zi : roots) {
                const auto ev = eval_with_derivative(c, zi);
                worst = std::max(worst,
                                 std::abs(ev.p) / eval_scale(c, std::abs(zi)));
            }
            return worst;
        };

        std::size_t total_iter = 0;
        const std::size_t attempt_budget = (opts.max_iter + 2) / 3;
        std::vector<cplx> best = z;
        double best_worst = std::numeric_limits<double>::infinity();
        for (int attempt = 0; attempt < 3 && total_iter < opts.max_iter; ++attempt) {
            const std::size_t attempt_cap =
                std::min(opts.max_iter, total_iter + attempt_budget);
            for (std::size_t k = 0; k < deg; ++k) {
                // Irrational angular offset keeps starting points off the axes.
                const double ang = 2.0 * std::numbers::pi *
                                       (static_cast<double>(k) + 0.25) /
                                       static_cast<double>(deg) +
                                   0.577 / static_cast<double>(deg) + 0.3 +
                                   0.7 * attempt;
                z[k] = radius * cplx(std::cos(ang), std::sin(ang));
            }

            for (; total_iter < attempt_cap; ++total_iter) {
                double max_step = 0.0;
                bool all_at_floor = true;
                for (std::size_t i = 0; i < deg; ++i) {
                    const auto ev = eval_with_derivative(c, z[i]);
                    const double scale = eval_scale(c, std::abs(z[i]));
                    if (std::abs(ev.p) > eps_floor * scale) all_at_floor = false;
                    cplx newton = ev.dp == 0.0 ? cplx(0.1, 0.1) : ev.p / ev.dp;
                    cplx repulsion = 0.0;
                    for (std::size_t j = 0; j < deg; ++j) {
                        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
                    }
                    const cplx den = 1.0 - newton * repulsion;
                    cplx w = den == 0.0 ? newton : newton / den;
                    // Trust region: near-collisions can produce huge
                    // corrections that fling a root toward 0 or infinity,
                    // where the relative residual saturates and never
                    // recovers.
                    const double wcap = 0.5 * (1.0 + std::abs(z[i]));
                    if (std::abs(w) > wcap) w *= wcap / std::abs(w);
                    z[i] -= w;
                    if (!std::isfinite(z[i].real()) || !std::isfinite(z[i].imag())) {
                        z[i] = radius * std::polar(1.0, 2.2 * static_cast<double>(i) + 0.9);
                    }
                    max_step = std::max(max_step, std::abs(w) / (1.0 + std::abs(z[i])));
                }
                if (max_step <= 1e-14 || all_at_floor) {
                    ++total_iter;
                    break;
                }
            }

            // A single stray root (e.g. trapped on the positive real axis,
            // which holds no zeros of a positive-coefficient polynomial) is
            // pinned down exactly by the root-sum identity once the other
            // deg-1 roots have settled; repair it and polish with Newton.
            std::vector<std::size_t> bad;
            for (std::size_t i = 0; i < deg; ++i) {
                const auto ev = eval_with_derivative(c, z[i]);
                if (std::abs(ev.p) >
                    std::min(1e-8, opts.tol) * eval_scale(c, std::abs(z[i]))) {
                    bad.push_back(i);
                }
            }
            if (bad.size() == 1) {
                cplx sum_others = 0.0;
                for (std::size_t j = 0; j < deg; ++j) {
                    if (j != bad[0]) sum_others += z[j];
                }
                cplx x = -c[deg - 1] / c[deg] - sum_others;
                for (int polish = 0; polish < 60; ++polish) {
                    const auto ev = eval_with_derivative(c, x);
                    if (ev.dp == 0.0) break;
                    const cplx step = ev.p / ev.dp;
                    x -= step;
                    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(x))) break;
                }
                z[bad[0]] = x;
            }

            const double worst = worst_residual(z);
            if (worst < best_worst) {
                best_worst = worst;
                best = z;
            }
            if (worst <= opts.tol) break;
        }
        z = best;
        out.iterations = total_iter;

        refine_clusters(c, z);
        enforce_conjugate_pairs(z);
    }

    for (std::size_t k = 0; k < zero_roots; ++k) z.push_back(0.0);
    std::sort(z.begin(), z.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });

    double worst = 0.0;
    for (auto zi : z) {
        if (zi == 0.0) continue;  // exact factored roots
        const auto ev = eval_with_derivative(c, zi);
        const double scale = eval_scale(c, std::abs(zi));
        worst = std::max(worst, std::abs(ev.p) / scale);
    }
    out.zeros = std::move(z);
    out.residual_bound = worst;
    if (worst > opts.tol) {
        throw_numeric("root iteration did not converge within " +
                      std::to_string(opts.max_iter) +
                      " iterations; best residual " + format_g17(worst));
    }
    return out;
}

ZeroSet find_zeros(const PartitionPolynomial& poly, double tol) {
    RootFinderOptions opts;
    opts.tol = tol;
    return find_polynomial_zeros(poly.coefficients, opts);
}

double distance_to_positive_axis(cplx z) {
    if (z.real() >= 0.0) return std::abs(z.imag());
    return std::abs(z);
}

}  // namespace spinmarket
