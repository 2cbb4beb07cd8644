#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "swpclock/packet.hpp"
#include "swpclock/params.hpp"
#include "swpclock/potential.hpp"

namespace swpclock {

/// Uniform spatial grid with hard-wall (Dirichlet) boundaries at both ends.
struct Grid1D {
    double zMin = 0.0;
    double zMax = 0.0;
    std::size_t nPoints = 0;

    double dz() const { return (zMax - zMin) / static_cast<double>(nPoints - 1); }
    double coordinate(std::size_t j) const { return zMin + dz() * static_cast<double>(j); }
    void validate() const;
};

struct PacketState {
    std::vector<std::complex<double>> psi; ///< wavefunction on the grid nodes
    double t = 0.0;
};

struct PropagationReport {
    double probT = 0.0;      ///< final mass right of the clock window
    double probR = 0.0;      ///< final mass left of the clock window
    double probInside = 0.0; ///< final mass inside the clock window
    double normDrift = 0.0;  ///< max |norm(t) - 1| observed
    double boundaryMax = 0.0;///< max boundary-cell density |psi|^2 dz observed
    double tMax = 0.0;
    double dt = 0.0;
    std::size_t steps = 0;
};

/// Carries the (complete) report when a run finishes in an invalid state.
class PropagationError : public std::runtime_error {
  public:
    PropagationError(const std::string& what, PropagationReport rep)
        : std::runtime_error(what), report(std::move(rep)) {}
    PropagationReport report;
};

/// Final state still holds more than `insideTolerance` probability inside the
/// window: the asymptotic transmission/reflection split is not yet meaningful.
class AsymptoticError : public PropagationError {
  public:
    using PropagationError::PropagationError;
};

/// Significant density reached the hard walls: reflections off the boundary
/// would contaminate everything after that point.
class BoundaryError : public PropagationError {
  public:
    using PropagationError::PropagationError;
};

struct EvolveOptions {
    double tMax = 0.0;
    double dt = 0.0; ///< 0 selects the default 0.5 * mass * dz^2 / hbar
    std::vector<double> snapshotTimes;
    std::function<void(const PacketState&)> snapshotSink;
    double insideTolerance = 1e-3;
    double boundaryTolerance = 1e-10;
};

/// Evolve the packet under the potential with the unitary Cayley
/// (Crank-Nicolson) scheme psi^{n+1} = (1 + i dt H / 2 hbar)^{-1}
/// (1 - i dt H / 2 hbar) psi^n on the hard-wall grid; delta spikes enter as
/// strength/dz on their nearest cell. The initial state is the packet
/// discretised on the grid and renormalised to exactly unit norm.
///
/// Throws AsymptoticError / BoundaryError (both carrying the report) when the
/// respective invariant fails; otherwise returns the report.
PropagationReport evolve(const GaussianPacket& packet, const Potential& potential,
                         const PhysicalParams& params, const Grid1D& grid,
                         const EvolveOptions& options);

/// (z, |psi|^2) rows for a state on its grid.
std::vector<std::pair<double, double>> snapshot_density(const PacketState& state,
                                                        const Grid1D& grid);

} // namespace swpclock
