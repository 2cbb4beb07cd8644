#pragma once

#include <stdexcept>

namespace swpclock {

/// Global physical constants. Defaults are natural units (hbar = mass = 1);
/// every quantity in the library is expressed in the unit system implied here.
struct PhysicalParams {
    double hbar = 1.0;
    double mass = 1.0;

    void validate() const {
        if (!(hbar > 0.0) || !(mass > 0.0))
            throw std::invalid_argument("PhysicalParams: hbar and mass must be positive");
    }

    /// Kinetic energy of a plane wave with wavenumber k.
    double energy(double k) const { return hbar * hbar * k * k / (2.0 * mass); }

    /// Group velocity of a plane wave with wavenumber k.
    double velocity(double k) const { return hbar * k / mass; }
};

} // namespace swpclock
