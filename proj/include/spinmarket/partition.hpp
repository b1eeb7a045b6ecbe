#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace spinmarket {

enum class VariableKind { fugacity, temperature };

/// Partition function of an open spin-1/2 chain in polynomial form.
/// For the fugacity kind the variable is z = exp(-2*h*beta) and the overall
/// factor exp(n*h*beta) has been divided out, leaving strictly positive
/// coefficients c[k] = sum over configurations with k down spins of
/// exp(K * bond sum). True coefficients are coefficients[k] * exp(log_scale);
/// log_scale is zero whenever the raw values fit in double range.
struct PartitionPolynomial {
    std::vector<double> coefficients;  // ascending powers, degree == n_sites
    VariableKind variable_kind = VariableKind::fugacity;
    double coupling_k = 0.0;  // K = beta * J
    double field_hbeta = 0.0; // absorbed into the variable for the chain
    int n_sites = 0;
    double log_scale = 0.0;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
    std::complex<double> eval(std::complex<double> z) const;
};

/// Transfer-matrix recursion carrying polynomial coefficients in z.
/// n_sites must lie in [1, 4096].
PartitionPolynomial chain_partition_polynomial(double coupling_k, int n_sites);

}  // namespace spinmarket
