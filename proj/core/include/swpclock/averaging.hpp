#pragma once

#include <cstddef>
#include <vector>

#include "swpclock/packet.hpp"
#include "swpclock/params.hpp"
#include "swpclock/potential.hpp"

namespace swpclock {

/// Controls for the spectral averages.
///
/// Near reflection zeros (above-barrier resonances) the clock integrands
/// carry finite-difference phase and cancellation noise; for opaque barriers
/// this puts a roundoff floor around 1e-9..3e-10 relative on some
/// components. The integrator freezes noise-saturated regions instead of
/// refining them forever, so a relTol below the floor returns with the
/// shortfall visible in errAvgT / errAvgR / errMeanDwell (check them when
/// tightening relTol); only a floor grossly above the request, or genuine
/// structure exhausting the depth/panel budget, raises QuadratureError.
struct QuadratureOptions {
    double relTol = 1e-9;       ///< per-component relative tolerance, (0, 1e-3]
    double windowSigmas = 12.0; ///< k-window half-width in units of sigma_k, >= 6
    int maxDepth = 40;          ///< adaptive bisection depth limit
    bool resonanceSplit = true; ///< seed panel edges at resonances / thresholds

    void validate() const;
};

/// Post-selected packet averages over the spectral window
/// [max(1e-6, k0 - W sigma_k), k0 + W sigma_k]:
///
///   avgT = Int w |T|^2 t_T / Int w |T|^2,   w(k) = |A(k)|^2 / 2 pi,
///
/// and likewise for reflection; meanDwell is the unconditional average of
/// the stationary dwell time. probT/probR are the spectral channel weights
/// (the packet's asymptotic transmission/reflection probabilities). A
/// channel with weight below 1e-14 is flagged invalid and reported as 0.
struct AverageTimes {
    double avgT = 0.0;
    double avgR = 0.0;
    double meanDwell = 0.0;
    double tFree = 0.0; ///< free flight over the clock window at k0
    double probT = 0.0;
    double probR = 0.0;
    bool avgTValid = false;
    bool avgRValid = false;
    double excludedMass = 0.0; ///< Gaussian mass outside the k-window
    double kLo = 0.0, kHi = 0.0;
    std::size_t evaluations = 0;
    /// Dimensionless (relative) quadrature error estimates for the three
    /// averaged quantities; ratios combine numerator and denominator errors.
    double errAvgT = 0.0;
    double errAvgR = 0.0;
    double errMeanDwell = 0.0;
};

AverageTimes averaged_times(const GaussianPacket& packet, const Potential& potential,
                            const PhysicalParams& params, const QuadratureOptions& options = {});

/// Unconditional spectral average of the stationary dwell time alone
/// (no clock solves; independent route used for identity cross-checks).
double mean_dwell(const GaussianPacket& packet, const Potential& potential,
                  const PhysicalParams& params, const QuadratureOptions& options = {});

/// Normalised spectral densities sampled on a k grid: incident |A|^2,
/// transmitted |A T|^2 and reflected |A R|^2, each scaled to unit integral
/// over the spectral window (reflected only if its weight is nonzero).
struct SpectralSample {
    double k = 0.0;
    double incident = 0.0;
    double transmitted = 0.0;
    double reflected = 0.0;
};

std::vector<SpectralSample> spectral_densities(const GaussianPacket& packet,
                                               const Potential& potential,
                                               const PhysicalParams& params,
                                               const std::vector<double>& kGrid,
                                               const QuadratureOptions& options = {});

} // namespace swpclock
