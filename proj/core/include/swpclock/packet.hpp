#pragma once

#include <complex>

#include "swpclock/params.hpp"

namespace swpclock {

/// Minimum-uncertainty Gaussian wave packet
///
///   Phi(z, 0) = (2 pi sigma^2)^(-1/4) exp(-(z - z0)^2 / (4 sigma^2)) exp(i k0 z)
///
/// whose momentum amplitude, with the convention Phi(z) = Int dk/(2 pi) A(k) e^{ikz},
/// is A(k) = (8 pi)^(1/4) sqrt(sigma) exp(-sigma^2 (k - k0)^2) exp(-i (k - k0) z0),
/// normalised so that Int dk/(2 pi) |A(k)|^2 = 1.
struct GaussianPacket {
    double k0 = 1.0;    ///< central wavenumber (> 0)
    double sigma = 10.0; ///< position-space standard deviation of |Phi|^2
    double z0 = -80.0;  ///< initial centre

    /// Throws std::invalid_argument on non-physical values; emits a warning
    /// when k0*sigma < 5 (the negative-k tail is then not negligible and the
    /// one-sided incidence assumption degrades).
    void validate() const;

    /// Momentum-space standard deviation of |A|^2.
    double sigma_k() const { return 0.5 / sigma; }
};

/// A(k) as defined above.
std::complex<double> momentum_amplitude(const GaussianPacket& packet, double k);

/// |A(k)|^2 / (2 pi): the weight density against plain dk integration.
double spectral_weight(const GaussianPacket& packet, double k);

/// Phi(z, 0).
std::complex<double> position_amplitude(const GaussianPacket& packet, double z);

/// Probability carried by z > 0 at t = 0: (1/2) erfc(|z0| / (sigma sqrt(2)))
/// for z0 < 0. Used to verify the packet starts on the incidence side.
double initial_right_probability(const GaussianPacket& packet);

} // namespace swpclock
