#pragma once

#include <complex>

#include "swpclock/params.hpp"
#include "swpclock/potential.hpp"

namespace swpclock {

/// Scattering amplitudes of a unit plane wave e^{ikz} incident from the left:
/// psi -> e^{ikz} + R e^{-ikz} (left), T e^{ikz} (right). Phases are global
/// (referenced to z = 0). probT is computed through log |T| and stays
/// meaningful when T itself underflows at extreme opacity.
struct ScatteringResult {
    double k = 0.0;
    std::complex<double> T{0.0, 0.0};
    std::complex<double> R{0.0, 0.0};
    double probT = 0.0;   ///< |T|^2
    double probR = 0.0;   ///< |R|^2
    double phiT = 0.0;    ///< arg T in (-pi, pi]
    double phiR = 0.0;    ///< arg R in (-pi, pi]
    double logMagT = 0.0; ///< ln |T|
};

/// Solve the stationary scattering problem at wavenumber k > 0.
///
/// `perturbation` adds a constant to the potential exactly on the clock
/// window (the clock-coupling term); 0 gives the bare potential. The solver
/// composes real (psi, psi') transfer matrices (entire through propagating /
/// evanescent thresholds) with log-scaled evanescent factors, so it is
/// overflow-safe at opacities far beyond double range of |T|.
ScatteringResult amplitudes(const Potential& potential, const PhysicalParams& params, double k,
                            double perturbation = 0.0);

/// Closed-form |T|^2 for strength*[delta(z) + delta(z-d)]:
///   1 / (1 + 4 a^2 (a sin kd + cos kd)^2),  a = mass*strength/(hbar^2 k).
/// Independent of the transfer-matrix path; used as a cross-check.
double closed_form_dd_probT(double strength, double spacing, const PhysicalParams& params,
                            double k);

/// Stationary dwell time at wavenumber k: the flux-normalised norm of the
/// scattering state over the clock window,
///   tau_D = (mass / (hbar k)) * Int_window |psi(z)|^2 dz,
/// evaluated with per-region closed-form integrals (no grid). The backward
/// coefficient recursion runs right-to-left, which is the numerically stable
/// direction under barriers. Throws std::range_error when the accumulated
/// evanescent decay exceeds ~e^650 (use the analytic family formulas there).
double dwell_integral(const Potential& potential, const PhysicalParams& params, double k);

} // namespace swpclock
