#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "swpclock/clock_times.hpp"
#include "swpclock/resonance.hpp"
#include "swpclock/scattering.hpp"

using namespace swpclock;

namespace {
const PhysicalParams pp;
}

TEST_SUITE("resonance") {

TEST_CASE("frozen resonant wavenumbers of the strength-16 spacing-5 pair") {
    const auto res = find_resonances(16.0, 5.0, pp, 0.1, 2.6);
    REQUIRE(res.size() == 4);
    CHECK(res[0].k == doctest::Approx(0.6205653499935665).epsilon(1e-10));
    CHECK(res[1].k == doctest::Approx(1.2411536479494008).epsilon(1e-10));
    CHECK(res[2].k == doctest::Approx(1.8617874402200452).epsilon(1e-10));
    CHECK(res[3].k == doctest::Approx(2.4824884872630806).epsilon(1e-10));
    CHECK(res[0].index == 1);
    CHECK(res[3].index == 4);
}

TEST_CASE("resonance count matches a dense scan of the transmission curve") {
    const double kMin = 0.1;
    const double kMax = 3.2;
    const auto res = find_resonances(16.0, 5.0, pp, kMin, kMax);
    const auto probT = [&](double k) { return closed_form_dd_probT(16.0, 5.0, pp, k); };
    const std::size_t peaks = oracles::count_peaks(probT, kMin, kMax, 2000000, 0.5);
    CHECK(res.size() == peaks);
}

TEST_CASE("transmission is perfect at every resonance") {
    const Potential dd = Potential::double_delta(16.0, 5.0);
    for (const auto& r : find_resonances(16.0, 5.0, pp, 0.1, 2.6)) {
        const ScatteringResult s = amplitudes(dd, pp, r.k);
        CHECK(s.probT > 1.0 - 1e-10);
        CHECK(closed_form_dd_probT(16.0, 5.0, pp, r.k) > 1.0 - 1e-10);
    }
}

TEST_CASE("closed-form resonant dwell matches the general formula at k_n") {
    const auto res = find_resonances(16.0, 5.0, pp, 0.1, 2.6);
    for (const auto& r : res) {
        const double general = dwell_double_delta(16.0, 5.0, pp, r.k);
        CHECK(resonant_dwell(16.0, 5.0, pp, r.k) == doctest::Approx(general).epsilon(1e-8));
        CHECK(r.dwell == doctest::Approx(general).epsilon(1e-8));
    }
    CHECK(res[1].dwell == doctest::Approx(1359.712143289527).epsilon(1e-9));
}

TEST_CASE("peak widths bracket the half-maximum crossings") {
    const auto res = find_resonances(16.0, 5.0, pp, 0.1, 2.6);
    const auto probT = [&](double k) { return closed_form_dd_probT(16.0, 5.0, pp, k); };
    for (const auto& r : res) {
        CHECK(r.width > 0.0);
        // |T|^2 falls to ~1/2 one half-width away (Lorentzian approximation,
        // so only loose agreement is demanded).
        const double lo = probT(r.k - r.width);
        const double hi = probT(r.k + r.width);
        CHECK(lo == doctest::Approx(0.5).epsilon(0.2));
        CHECK(hi == doctest::Approx(0.5).epsilon(0.2));
    }
    // Lifetime ordering: lower resonances are sharper for fixed strength.
    CHECK(res[0].width < res[1].width);
    CHECK(res[1].width < res[2].width);
}

TEST_CASE("impenetrable-wall limit pins resonances to the box spectrum") {
    const double d = 5.0;
    const auto res = find_resonances(1e6, d, pp, 0.1, 2.6);
    REQUIRE(res.size() == 4);
    for (const auto& r : res) {
        CHECK(std::abs(r.k - r.index * std::numbers::pi / d) < 1e-5);
    }
}

TEST_CASE("empty and partial ranges are honored") {
    CHECK(find_resonances(16.0, 5.0, pp, 0.1, 0.5).empty());
    const auto mid = find_resonances(16.0, 5.0, pp, 1.0, 2.0);
    REQUIRE(mid.size() == 2);
    CHECK(mid[0].index == 2);
    CHECK(mid[1].index == 3);
}

} // TEST_SUITE
