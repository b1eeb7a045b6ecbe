#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "spinmarket/errors.hpp"
#include "spinmarket/partition.hpp"

using namespace spinmarket;

TEST_CASE("chain polynomial: free spin and independent pair") {
    const auto p1 = chain_partition_polynomial(0.0, 1);
    REQUIRE(p1.coefficients.size() == 2);
    CHECK(p1.coefficients[0] == 1.0);
    CHECK(p1.coefficients[1] == 1.0);
    CHECK(p1.log_scale == 0.0);

    const auto p2 = chain_partition_polynomial(0.0, 2);
    REQUIRE(p2.coefficients.size() == 3);
    CHECK(p2.coefficients[0] == 1.0);
    CHECK(p2.coefficients[1] == 2.0);
    CHECK(p2.coefficients[2] == 1.0);
}

TEST_CASE("chain polynomial: K=0.5, n=2 against the 4-configuration sum") {
    const auto p = chain_partition_polynomial(0.5, 2);
    REQUIRE(p.coefficients.size() == 3);
    CHECK(p.coefficients[0] == doctest::Approx(std::exp(0.5)).epsilon(1e-15));
    CHECK(p.coefficients[1] == doctest::Approx(2.0 * std::exp(-0.5)).epsilon(1e-15));
    CHECK(p.coefficients[2] == doctest::Approx(std::exp(0.5)).epsilon(1e-15));
    // the values quoted to 5 decimals
    CHECK(p.coefficients[0] == doctest::Approx(1.64872).epsilon(1e-5));
    CHECK(p.coefficients[1] == doctest::Approx(1.21306).epsilon(1e-5));
}

TEST_CASE("chain polynomial: transfer matrix matches brute-force enumeration") {
    for (double k : {0.0, 0.25, 0.7, 1.3, 2.0}) {
        for (int n : {1, 3, 6, 9, 12}) {
            const auto poly = chain_partition_polynomial(k, n);
            const auto brute = oracle::brute_force_chain_poly(k, n);
            REQUIRE(poly.coefficients.size() == brute.size());
            CHECK(poly.log_scale == 0.0);
            for (std::size_t i = 0; i < brute.size(); ++i) {
                CHECK(poly.coefficients[i] ==
                      doctest::Approx(brute[i]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("chain polynomial: degree equals n and coefficients stay positive") {
    for (int n : {1, 17, 64, 257}) {
        const auto poly = chain_partition_polynomial(0.4, n);
        CHECK(poly.degree() == n);
        for (double c : poly.coefficients) CHECK(c > 0.0);
    }
}

TEST_CASE("chain polynomial: large-K coefficients fold through the log scale") {
    // K=2, n=512: raw scale e^(K*(n-1)) ~ e^1022 needs rescaling mid-run,
    // then folds back only if representable; here it is not, so the scale
    // field carries the magnitude and the mantissas stay finite.
    const auto poly = chain_partition_polynomial(2.0, 512);
    CHECK(poly.log_scale > 0.0);
    for (double c : poly.coefficients) {
        CHECK(c > 0.0);
        CHECK(std::isfinite(c));
    }
    // palindromic by spin-flip symmetry
    const std::size_t n = poly.coefficients.size();
    for (std::size_t i = 0; i < n / 2; ++i) {
        CHECK(poly.coefficients[i] ==
              doctest::Approx(poly.coefficients[n - 1 - i]).epsilon(1e-12));
    }
}

TEST_CASE("chain polynomial: range validation") {
    CHECK_THROWS_AS(chain_partition_polynomial(0.5, 0), Error);
    CHECK_THROWS_AS(chain_partition_polynomial(0.5, 4097), Error);
    CHECK_THROWS_AS(chain_partition_polynomial(std::nan(""), 4), Error);
}
