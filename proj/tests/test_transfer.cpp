#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "swpclock/transfer_matrix.hpp"

using namespace swpclock;

TEST_SUITE("transfer") {

TEST_CASE("delta matching matrix: identity at zero strength, unimodular always") {
    const PhysicalParams pp;
    const TransferMatrix id = delta_matching_matrix(0.0, pp, 1.3);
    CHECK(id.m11 == std::complex<double>(1.0, 0.0));
    CHECK(id.m12 == std::complex<double>(0.0, 0.0));
    CHECK(id.m21 == std::complex<double>(0.0, 0.0));
    CHECK(id.m22 == std::complex<double>(1.0, 0.0));

    for (double g : {0.1, 2.0, 16.0, 500.0}) {
        for (double k : {0.2, 1.0, 3.7}) {
            const TransferMatrix m = delta_matching_matrix(g, pp, k);
            CHECK(std::abs(std::abs(m.determinant()) - 1.0) < 1e-14);
            // Known single-delta transmission through m11 = 1 + i alpha.
            const double alpha = pp.mass * g / (pp.hbar * pp.hbar * k);
            CHECK(std::abs(m.m11 - std::complex<double>(1.0, alpha)) < 1e-15 * (1.0 + alpha));
        }
    }
}

TEST_CASE("transfer matrix composition preserves the determinant") {
    const PhysicalParams pp;
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> gDist(0.0, 10.0);
    std::uniform_real_distribution<double> kDist(0.3, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double k = kDist(rng);
        TransferMatrix m = TransferMatrix::identity();
        for (int j = 0; j < 6; ++j)
            m = m * delta_matching_matrix(gDist(rng), pp, k);
        CHECK(std::abs(std::abs(m.determinant()) - 1.0) < 1e-12);
    }
}

TEST_CASE("segment wave matrix: series branch joins the trig branches smoothly") {
    // Straddle the |kp2| w^2 = 1e-6 branch switch from both sides and both
    // signs. The full-width call lands on one branch, the half-width calls on
    // the other; the exact composition w = w/2 + w/2 must reproduce it. The
    // evanescent branch stores rescaled entries, so compare true entries
    // (stored * e^{log_scale}; the exponents here are ~1e-3, far from overflow).
    const double w = 2.0;
    for (double kp2 : {2.6e-7, 2.4e-7, -2.6e-7, -2.4e-7}) {
        const WaveMatrix m = segment_wave_matrix(kp2, w);
        const WaveMatrix half = segment_wave_matrix(kp2, 0.5 * w);
        const WaveMatrix composed = half * half;
        const double sm = std::exp(m.log_scale);
        const double sc = std::exp(composed.log_scale);
        CHECK(m.m11 * sm == doctest::Approx(composed.m11 * sc).epsilon(1e-13));
        CHECK(m.m12 * sm == doctest::Approx(composed.m12 * sc).epsilon(1e-13));
        CHECK(m.m21 * sm == doctest::Approx(composed.m21 * sc).epsilon(1e-13));
        CHECK(m.m22 * sm == doctest::Approx(composed.m22 * sc).epsilon(1e-13));
    }
}

TEST_CASE("segment wave matrix determinant is one at any opacity") {
    for (double kp2 : {4.0, 0.3, 1e-9, 0.0, -1e-9, -0.5, -9.0, -400.0}) {
        for (double w : {0.01, 1.0, 7.0, 40.0}) {
            const WaveMatrix m = segment_wave_matrix(kp2, w);
            // true det = det(scaled) * e^{2 log_scale}; for evanescent blocks
            // det(scaled) = e^{-2 K w} exactly.
            const double expected = std::exp(-2.0 * m.log_scale);
            CHECK(m.det() == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("evanescent scaling keeps entries representable at extreme opacity") {
    // kappa w = 200: e^{200} would overflow long double ranges of the naive
    // cosh/sinh form times itself in composition; scaled entries stay O(1).
    const WaveMatrix m = segment_wave_matrix(-400.0, 10.0); // kappa = 20, w = 10
    CHECK(m.log_scale == doctest::Approx(200.0));
    CHECK(std::isfinite(m.m11));
    CHECK(std::abs(m.m11) <= 1.0);
    CHECK(std::abs(m.m21) <= 20.000001);

    const WaveMatrix prod = m * m; // kappa w = 400 total
    CHECK(prod.log_scale == doctest::Approx(400.0));
    CHECK(std::isfinite(prod.m11));
}

TEST_CASE("propagating segment matrix is an exact rotation-like block") {
    const double kp2 = 2.25, w = 3.0; // q = 1.5
    const WaveMatrix m = segment_wave_matrix(kp2, w);
    const double q = 1.5;
    CHECK(m.m11 == doctest::Approx(std::cos(q * w)).epsilon(1e-15));
    CHECK(m.m12 == doctest::Approx(std::sin(q * w) / q).epsilon(1e-15));
    CHECK(m.m21 == doctest::Approx(-q * std::sin(q * w)).epsilon(1e-15));
    CHECK(m.log_scale == 0.0);
}

} // TEST_SUITE
