#include "spinmarket/partition.hpp"

#include <algorithm>
#include <cmath>

#include "spinmarket/errors.hpp"

namespace spinmarket {

std::complex<double> PartitionPolynomial::eval(std::complex<double> z) const {
    std::complex<double> p = 0.0;
    for (std::size_t k = coefficients.size(); k-- > 0;) {
        p = p * z + coefficients[k];
    }
    return p;
}

PartitionPolynomial chain_partition_polynomial(double coupling_k, int n_sites) {
    if (!std::isfinite(coupling_k)) throw_validation("K must be finite");
    if (n_sites < 1 || n_sites > 4096) {
        throw_validation("n_sites must be in [1, 4096]");
    }

    const double ek = std::exp(coupling_k);
    const double emk = std::exp(-coupling_k);

    // a[k]: weight of chains ending spin-up with k down spins; b[k]: ending
    // spin-down. Appending a site multiplies by the bond weight and, for a
    // down spin, by one factor of z.
    std::vector<double> a(static_cast<std::size_t>(n_sites) + 1, 0.0);
    std::vector<double> b(a.size(), 0.0);
    a[0] = 1.0;
    b[1] = 1.0;

    double log_scale = 0.0;
    for (int site = 2; site <= n_sites; ++site) {
        std::vector<double> a2(a.size(), 0.0);
        std::vector<double> b2(a.size(), 0.0);
        for (std::size_t k = 0; k < a.size(); ++k) {
            a2[k] = ek * a[k] + emk * b[k];
            if (k + 1 < a.size()) {
                b2[k + 1] = emk * a[k] + ek * b[k];
            }
        }
        a.swap(a2);
        b.swap(b2);
        double mx = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) mx = std::max(mx, std::max(a[k], b[k]));
        if (mx > 1e280) {
            for (auto& v : a) v /= mx;
            for (auto& v : b) v /= mx;
            log_scale += std::log(mx);
        }
    }

    PartitionPolynomial poly;
    poly.variable_kind = VariableKind::fugacity;
    poly.coupling_k = coupling_k;
    poly.n_sites = n_sites;
    poly.coefficients.resize(a.size());
    double mx = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        poly.coefficients[k] = a[k] + b[k];
        mx = std::max(mx, poly.coefficients[k]);
    }
    // Fold accumulated scale back in when representable.
    if (log_scale != 0.0 && log_scale + std::log(mx) < 690.0) {
        for (auto& v : poly.coefficients) v = std::exp(log_scale + std::log(v));
        log_scale = 0.0;
    }
    poly.log_scale = log_scale;

    for (double v : poly.coefficients) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw_numeric("partition coefficients exceed double range at K=" +
                          std::to_string(coupling_k) + ", n=" + std::to_string(n_sites));
        }
    }
    return poly;
}

}  // namespace spinmarket
