#include "swpclock/averaging.hpp"

#include <array>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "swpclock/clock_times.hpp"
#include "swpclock/quadrature.hpp"
#include "swpclock/resonance.hpp"
#include "swpclock/scattering.hpp"
#include "swpclock/warnings.hpp"

namespace swpclock {

namespace {

constexpr double kChannelFloor = 1e-14;

struct SpectralDomain {
    double lo = 0.0, hi = 0.0;
    double excluded = 0.0;
    std::vector<double> seeds;
};

SpectralDomain spectral_domain(const GaussianPacket& packet, const Potential& pot,
                               const PhysicalParams& pp, const QuadratureOptions& opt) {
    SpectralDomain d;
    const double sk = packet.sigma_k();
    d.lo = std::max(1e-6, packet.k0 - opt.windowSigmas * sk);
    d.hi = packet.k0 + opt.windowSigmas * sk;
    const double rt2 = std::sqrt(2.0);
    d.excluded = 0.5 * std::erfc((d.hi - packet.k0) / (sk * rt2)) +
                 0.5 * std::erfc((packet.k0 - d.lo) / (sk * rt2));

    if (!opt.resonanceSplit)
        return d;

    // Seed panel edges at spectral features: resonance cores (plus +-3 widths)
    // for delta pairs, barrier-top thresholds for segments.
    if (pot.kind() == PotentialKind::DoubleDelta && pot.delta_strength() > 0.0) {
        for (const auto& r :
             find_resonances(pot.delta_strength(), pot.delta_spacing(), pp, d.lo, d.hi)) {
            d.seeds.push_back(r.k);
            if (r.width > 0.0) {
                d.seeds.push_back(r.k - 3.0 * r.width);
                d.seeds.push_back(r.k + 3.0 * r.width);
            }
        }
    } else {
        for (const auto& s : pot.segments()) {
            if (s.height > 0.0) {
                const double kThr = std::sqrt(2.0 * pp.mass * s.height) / pp.hbar;
                if (kThr > d.lo && kThr < d.hi)
                    d.seeds.push_back(kThr);
            }
        }
    }
    return d;
}

// Re-emit collected warnings as a single deduplicated summary. Must be
// called after the collector that captured them has been destroyed, so the
// summary reaches the caller's handler.
void summarize_warnings(const std::vector<std::string>& captured, const char* where) {
    if (captured.empty())
        return;
    std::set<std::string> unique(captured.begin(), captured.end());
    std::ostringstream msg;
    msg << where << ": " << captured.size() << " warnings (" << unique.size()
        << " distinct); first: " << captured.front();
    emit_warning(msg.str());
}

} // namespace

void QuadratureOptions::validate() const {
    if (!(relTol > 0.0) || relTol > 1e-3)
        throw std::invalid_argument("QuadratureOptions: relTol must be in (0, 1e-3]");
    if (!(windowSigmas >= 6.0))
        throw std::invalid_argument("QuadratureOptions: windowSigmas must be >= 6");
    if (maxDepth < 1)
        throw std::invalid_argument("QuadratureOptions: maxDepth must be >= 1");
}

AverageTimes averaged_times(const GaussianPacket& packet, const Potential& potential,
                            const PhysicalParams& params, const QuadratureOptions& options) {
    params.validate();
    packet.validate();
    options.validate();

    const SpectralDomain dom = spectral_domain(packet, potential, params, options);

    // Components: mass, wT, wR, wT tT, wR tR, w dwell.
    auto integrand = [&](double k) -> std::array<double, 6> {
        const ClockTimes ct = clock_times(potential, params, k);
        const ScatteringResult sr = amplitudes(potential, params, k);
        const double w = spectral_weight(packet, k);
        const double wT = w * sr.probT;
        const double wR = w * sr.probR;
        return {w, wT, wR, wT * ct.tT, wR * (ct.tRValid ? ct.tR : 0.0), w * ct.dwell};
    };

    QuadratureOutcome<6> q;
    std::vector<std::string> captured;
    {
        WarningCollector collector;
        q = adaptive_gauss_kronrod<6>(integrand, dom.lo, dom.hi, options.relTol,
                                      options.maxDepth, dom.seeds);
        captured = collector.messages();
    }

    AverageTimes out;
    out.kLo = dom.lo;
    out.kHi = dom.hi;
    out.excludedMass = dom.excluded;
    out.evaluations = q.evaluations;
    out.probT = q.value[1];
    out.probR = q.value[2];
    out.avgTValid = out.probT > kChannelFloor;
    out.avgRValid = out.probR > kChannelFloor;
    out.avgT = out.avgTValid ? q.value[3] / q.value[1] : 0.0;
    out.avgR = out.avgRValid ? q.value[4] / q.value[2] : 0.0;
    out.meanDwell = q.value[5];
    out.tFree = free_traversal_time(potential, params, packet.k0);

    auto relErr = [&](std::size_t j) {
        return q.errorEstimate[j] / std::max(std::abs(q.value[j]), 1e-300);
    };
    out.errAvgT = out.avgTValid ? relErr(3) + relErr(1) : 0.0;
    out.errAvgR = out.avgRValid ? relErr(4) + relErr(2) : 0.0;
    out.errMeanDwell = relErr(5);

    summarize_warnings(captured, "averaged_times");
    return out;
}

double mean_dwell(const GaussianPacket& packet, const Potential& potential,
                  const PhysicalParams& params, const QuadratureOptions& options) {
    params.validate();
    packet.validate();
    options.validate();

    const SpectralDomain dom = spectral_domain(packet, potential, params, options);

    auto integrand = [&](double k) -> std::array<double, 2> {
        const double w = spectral_weight(packet, k);
        return {w, w * stationary_dwell(potential, params, k)};
    };
    const auto q = adaptive_gauss_kronrod<2>(integrand, dom.lo, dom.hi, options.relTol,
                                             options.maxDepth, dom.seeds);
    return q.value[1];
}

std::vector<SpectralSample> spectral_densities(const GaussianPacket& packet,
                                               const Potential& potential,
                                               const PhysicalParams& params,
                                               const std::vector<double>& kGrid,
                                               const QuadratureOptions& options) {
    params.validate();
    packet.validate();
    options.validate();

    const SpectralDomain dom = spectral_domain(packet, potential, params, options);

    auto integrand = [&](double k) -> std::array<double, 3> {
        const ScatteringResult sr = amplitudes(potential, params, k);
        const double w = spectral_weight(packet, k);
        return {w, w * sr.probT, w * sr.probR};
    };
    const auto q = adaptive_gauss_kronrod<3>(integrand, dom.lo, dom.hi, options.relTol,
                                             options.maxDepth, dom.seeds);

    std::vector<SpectralSample> rows;
    rows.reserve(kGrid.size());
    for (double k : kGrid) {
        SpectralSample s;
        s.k = k;
        if (k > 0.0) {
            const ScatteringResult sr = amplitudes(potential, params, k);
            const double w = spectral_weight(packet, k);
            s.incident = q.value[0] > 0.0 ? w / q.value[0] : 0.0;
            s.transmitted = q.value[1] > kChannelFloor ? w * sr.probT / q.value[1] : 0.0;
            s.reflected = q.value[2] > kChannelFloor ? w * sr.probR / q.value[2] : 0.0;
        }
        rows.push_back(s);
    }
    return rows;
}

} // namespace swpclock
