#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "swpclock/averaging.hpp"
#include "swpclock/packet.hpp"
#include "swpclock/propagation.hpp"
#include "swpclock/warnings.hpp"

using namespace swpclock;

namespace {

const PhysicalParams pp;

double mean_position(const PacketState& state, const Grid1D& grid) {
    double s = 0.0;
    for (std::size_t j = 0; j < state.psi.size(); ++j)
        s += grid.coordinate(j) * std::norm(state.psi[j]);
    return s * grid.dz();
}

} // namespace

TEST_SUITE("propagation") {

TEST_CASE("free packet: unitary drift, ballistic centre, clean transmission") {
    const GaussianPacket packet{1.0, 5.0, -30.0};
    const Potential freeP = Potential::rectangular(0.0, 4.0);
    const Grid1D grid{-140.0, 140.0, 2801};

    std::vector<PacketState> shots;
    EvolveOptions opt;
    opt.tMax = 80.0;
    opt.snapshotTimes = {0.0, 40.0, 80.0};
    opt.snapshotSink = [&](const PacketState& s) { shots.push_back(s); };

    WarningCollector warnings;
    const PropagationReport rep = evolve(packet, freeP, pp, grid, opt);

    // Deliberately coarse grid: the sampling self-check must have spoken up.
    REQUIRE(warnings.messages().size() == 1);
    CHECK(warnings.messages()[0].find("undersamples the packet") != std::string::npos);

    CHECK(rep.dt == doctest::Approx(0.005).epsilon(1e-12));
    CHECK(rep.steps == 16000);
    CHECK(rep.tMax == doctest::Approx(80.0).epsilon(1e-12));
    CHECK(rep.normDrift < 1e-10);
    CHECK(rep.probT > 0.999);
    CHECK(rep.probR < 1e-5);
    CHECK(rep.probT + rep.probR + rep.probInside == doctest::Approx(1.0).epsilon(1e-9));

    REQUIRE(shots.size() == 3);
    CHECK(shots[0].t == 0.0);
    CHECK(shots[1].t == doctest::Approx(40.0).epsilon(1e-12));

    // t = 0 snapshot is the discretised packet (walls pinned, renormalised).
    for (double z : {-34.0, -30.0, -26.5}) {
        const auto j = static_cast<std::size_t>(std::lround((z - grid.zMin) / grid.dz()));
        const double got = std::norm(shots[0].psi[j]);
        const double want = std::norm(position_amplitude(packet, grid.coordinate(j)));
        CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }

    // Centre moves at hbar k0 / mass (small lattice group-velocity bias allowed).
    CHECK(std::abs(mean_position(shots[1], grid) - 10.0) < 0.3);
    CHECK(std::abs(mean_position(shots[2], grid) - 50.0) < 0.5);

    const auto rows = snapshot_density(shots[2], grid);
    REQUIRE(rows.size() == grid.nPoints);
    CHECK(rows[0].first == grid.zMin);
    CHECK(rows[0].second == 0.0); // hard wall
}

TEST_CASE("rectangular barrier: propagated channel split matches the spectral one") {
    const GaussianPacket packet{0.7, 8.0, -40.0};
    const Potential rect = Potential::rectangular(0.5, 2.0);
    const Grid1D grid{-180.0, 180.0, 3601};
    EvolveOptions opt;
    opt.tMax = 150.0;

    WarningCollector warnings;
    const PropagationReport rep = evolve(packet, rect, pp, grid, opt);
    const AverageTimes spectral = averaged_times(packet, rect, pp, {});

    CHECK(rep.probT == doctest::Approx(spectral.probT).epsilon(0.02));
    CHECK(rep.probR == doctest::Approx(spectral.probR).epsilon(0.02));
    CHECK(rep.probInside < 1e-3);
    CHECK(rep.normDrift < 1e-10);
}

TEST_CASE("double delta pair: propagated split matches the spectral one") {
    // Weak pair (short-lived resonance) so the trapped fraction drains within
    // an affordable evolution time.
    const GaussianPacket packet{1.285, 4.0, -20.0};
    const Potential dd = Potential::double_delta(2.0, 2.0);
    const Grid1D grid{-240.0, 240.0, 6001};
    EvolveOptions opt;
    opt.tMax = 110.0;

    WarningCollector warnings;
    const PropagationReport rep = evolve(packet, dd, pp, grid, opt);
    const AverageTimes spectral = averaged_times(packet, dd, pp, {});

    CHECK(rep.probT == doctest::Approx(spectral.probT).epsilon(0.03));
    CHECK(rep.probR == doctest::Approx(spectral.probR).epsilon(0.03));
    CHECK(rep.probInside < 1e-3);
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS((Grid1D{0.0, 10.0, 512}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((Grid1D{10.0, 10.0, 2048}.validate()), std::invalid_argument);
    CHECK_NOTHROW((Grid1D{-10.0, 10.0, 1024}.validate()));
    const Grid1D g{-1.0, 1.0, 2001};
    CHECK(g.dz() == doctest::Approx(0.001).epsilon(1e-12));
    CHECK(g.coordinate(1000) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("a delta spike off the grid is rejected up front") {
    const GaussianPacket packet{1.0, 5.0, -20.0};
    const Potential dd = Potential::double_delta(2.0, 2.0); // spikes at 0 and 2
    const Grid1D grid{-40.0, 1.0, 2048};
    EvolveOptions opt;
    opt.tMax = 1.0;
    WarningCollector warnings;
    CHECK_THROWS_AS(evolve(packet, dd, pp, grid, opt), std::invalid_argument);
}

TEST_CASE("wall contact raises BoundaryError carrying the full report") {
    const GaussianPacket packet{1.0, 3.0, -15.0};
    const Potential freeP = Potential::rectangular(0.0, 2.0);
    const Grid1D grid{-30.0, 30.0, 1201};
    EvolveOptions opt;
    opt.tMax = 40.0;

    WarningCollector warnings; // narrow packet + coarse grid both warn
    try {
        evolve(packet, freeP, pp, grid, opt);
        FAIL("expected BoundaryError");
    } catch (const BoundaryError& e) {
        CHECK(e.report.boundaryMax > opt.boundaryTolerance);
        CHECK(e.report.steps > 0);
        CHECK(std::string(e.what()).find("boundary-cell density") != std::string::npos);
    }
}

TEST_CASE("non-asymptotic final state raises AsymptoticError carrying the report") {
    const GaussianPacket packet{1.0, 5.0, -5.0};
    const Potential freeP = Potential::rectangular(0.0, 60.0);
    const Grid1D grid{-100.0, 100.0, 2001};
    EvolveOptions opt;
    opt.tMax = 5.0; // far too short: the packet is still inside the window

    WarningCollector warnings;
    try {
        evolve(packet, freeP, pp, grid, opt);
        FAIL("expected AsymptoticError");
    } catch (const AsymptoticError& e) {
        CHECK(e.report.probInside > 0.3);
        CHECK(e.report.steps == 1000);
        CHECK(e.report.probT + e.report.probR + e.report.probInside ==
              doctest::Approx(1.0).epsilon(1e-9));
    }
}

} // TEST_SUITE
