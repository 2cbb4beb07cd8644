#pragma once

#include <vector>

#include "swpclock/params.hpp"

namespace swpclock {

/// Transmission resonance of the symmetric double-delta potential. At the
/// resonant wavenumbers |T| = 1 exactly; between two deltas of strength g a
/// quasi-bound state forms whose lifetime grows with g.
struct Resonance {
    int index = 0;      ///< n in  k d + arctan(hbar^2 k / (mass g)) = n pi
    double k = 0.0;     ///< resonant wavenumber
    double dwell = 0.0; ///< stationary dwell time at k
    double width = 0.0; ///< half-width in k of the |T|^2 = 1/2 Lorentzian peak
};

/// All resonances with kMin <= k <= kMax, in increasing order. The defining
/// equation is strictly monotonic in k, so each branch n holds exactly one
/// root, bracketed in ((n - 1/2) pi / d, n pi / d) and bisected to
/// 1e-12 * max(1, k) absolute accuracy.
std::vector<Resonance> find_resonances(double strength, double spacing,
                                       const PhysicalParams& params, double kMin, double kMax);

/// Closed-form dwell time exactly at a resonant wavenumber kn:
///   (mass / (hbar kn^3)) * [2 mass g / hbar^2 + (2 mass^2 g^2 / hbar^4 + kn^2) d].
/// Grows as g^2 d for strong coupling — the quasi-bound-state lifetime scale.
double resonant_dwell(double strength, double spacing, const PhysicalParams& params, double kn);

} // namespace swpclock
