#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cosec/bounds.hpp"

using namespace cosec;

TEST_CASE("gaussian tail") {
    CHECK(gaussian_q(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    // Frozen reference value.
    CHECK(gaussian_q(2.3094) == doctest::Approx(0.010461).epsilon(1e-4));
    CHECK(gaussian_q(-1.0) + gaussian_q(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gaussian_q(8.0) < 1e-14);
}

TEST_CASE("rate-matched achievability is exactly one half") {
    // epsilon = k/n puts the argument at zero.
    CHECK(tvd_achievability(16, 8, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(tvd_achievability(32, 24, 0.75) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("reference bound values, n=16 k=8 eps=0.5") {
    const auto [eq_lo, eq_hi] = eq_loss_bounds(16, 8, 0.5);
    CHECK(eq_lo == doctest::Approx(0.5472).epsilon(1e-3));
    CHECK(eq_hi == doctest::Approx(4.016).epsilon(1e-3));
    const auto [chi_lo, chi_hi] = chi2_bounds(16, 8, 0.5);
    CHECK(chi_lo == doctest::Approx(0.5472).epsilon(1e-3));
    CHECK(chi_hi == doctest::Approx(128.0).epsilon(1e-3));
    CHECK(chi2_converse_direct(16, 8, 0.5) == doctest::Approx(1.662).epsilon(1e-3));
}

TEST_CASE("reference bound values, other operating points") {
    CHECK(eq_loss_bounds(32, 24, 0.75).first == doctest::Approx(0.5896).epsilon(1e-3));
    // kappa=9, n=32 at the rate-matched erasure probability k/n = 23/32.
    CHECK(chi2_converse_direct(32, 9, 23.0 / 32) == doctest::Approx(4.695).epsilon(1e-3));
}

TEST_CASE("degenerate cases") {
    CHECK(eq_loss_bounds(10, 0, 0.5) == std::pair{0.0, 0.0});
    CHECK(chi2_bounds(10, 0, 0.5) == std::pair{0.0, 0.0});
    // No erasures: converse reaches its ceiling 1 - 2^{-k}.
    CHECK(tvd_converse(10, 4, 0.0) == doctest::Approx(1.0 - std::exp2(-4.0)).epsilon(1e-14));
    // Full erasure: nothing leaks.
    CHECK(tvd_converse(10, 4, 1.0) == doctest::Approx(0.0));
    CHECK_THROWS(tvd_achievability(10, 4, 0.0));
    CHECK_THROWS(eq_loss_bounds(10, 11, 0.5));
}

TEST_CASE("converse decreases with the erasure rate") {
    const int n = 64;
    for (int k = 8; k <= 56; k += 8) {
        double prev = 2.0;
        for (double eps : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const double c = tvd_converse(n, k, eps);
            CHECK(c >= 0.0);
            CHECK(c <= prev + 1e-12);
            prev = c;
        }
    }
}

TEST_CASE("bound_report aggregates consistently") {
    const auto r = bound_report(16, 8, 8, 0.5);
    CHECK(r.tvd_achievability == doctest::Approx(tvd_achievability(16, 8, 0.5)));
    CHECK(r.tvd_converse == doctest::Approx(tvd_converse(16, 8, 0.5)));
    CHECK(r.eq_loss_lower == doctest::Approx(0.5472).epsilon(1e-3));
    CHECK(r.eq_loss_upper == doctest::Approx(4.016).epsilon(1e-3));
    CHECK(r.chi2_converse_direct == doctest::Approx(1.662).epsilon(1e-3));
}
