#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "spinmarket/partition.hpp"

namespace spinmarket {

struct ZeroSet {
    std::vector<std::complex<double>> zeros;  // sorted by (re, im), conjugate-paired
    double residual_bound = 0.0;  // max relative backward residual over zeros
    std::size_t iterations = 0;
};

struct RootFinderOptions {
    double tol = 1e-10;        // residual bound required for success
    std::size_t max_iter = 1000;
};

/// Simultaneous root iteration (Aberth) with starting points on the circle
/// of radius (max|c_i| / |c_N|)^(1/N). Root clusters are detected through
/// overlapping Gerschgorin-style inclusion disks and, when a multiplicity
/// hypothesis is confirmed by vanishing derivatives, collapsed onto the
/// corresponding root of the (m-1)-th derivative. Conjugate symmetry is
/// enforced afterwards and zeros are sorted canonically.
ZeroSet find_polynomial_zeros(std::span<const double> ascending_coeffs,
                              const RootFinderOptions& opts = {});

ZeroSet find_zeros(const PartitionPolynomial& poly, double tol = 1e-10);

/// Distance from a point to the positive real axis (the ray [0, inf)).
double distance_to_positive_axis(std::complex<double> z);

}  // namespace spinmarket
