#include "swpclock/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "swpclock/warnings.hpp"

namespace swpclock {

namespace {

using cd = std::complex<double>;

double grid_norm(const std::vector<cd>& psi, double dz) {
    double s = 0.0;
    for (const cd& v : psi)
        s += std::norm(v);
    return s * dz;
}

} // namespace

void Grid1D::validate() const {
    if (!(zMax > zMin))
        throw std::invalid_argument("Grid1D: zMax must exceed zMin");
    if (nPoints < 1024)
        throw std::invalid_argument("Grid1D: need at least 1024 points");
}

PropagationReport evolve(const GaussianPacket& packet, const Potential& potential,
                         const PhysicalParams& params, const Grid1D& grid,
                         const EvolveOptions& options) {
    params.validate();
    packet.validate();
    grid.validate();
    if (!(options.tMax >= 0.0))
        throw std::invalid_argument("evolve: tMax must be >= 0");

    const std::size_t n = grid.nPoints;
    const double dz = grid.dz();
    const double hb = params.hbar, m = params.mass;
    const double dt = options.dt > 0.0 ? options.dt : 0.5 * m * dz * dz / hb;

    // Sampled potential, delta spikes folded into their nearest cell.
    std::vector<double> v(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        v[j] = potential.value(grid.coordinate(j));
    for (const auto& d : potential.deltas()) {
        const auto j = static_cast<std::size_t>(
            std::lround((d.position - grid.zMin) / dz));
        if (j >= n)
            throw std::invalid_argument("evolve: delta spike outside the grid");
        v[j] += d.strength / dz;
    }

    // Stability / sampling sanity: dz k_max < 0.1 and dt E_max / hbar < 0.5
    // keep the Cayley phase errors small. Violations degrade accuracy, not
    // unitarity, so they warn rather than throw.
    {
        const double kMax = packet.k0 + 6.0 * packet.sigma_k();
        if (dz * kMax >= 0.1) {
            std::ostringstream msg;
            msg << "evolve: dz*kmax = " << dz * kMax << " >= 0.1; grid undersamples the packet";
            emit_warning(msg.str());
        }
        double vMax = 0.0;
        for (double x : v)
            vMax = std::max(vMax, std::abs(x));
        const double eMax = params.energy(kMax) + vMax;
        if (dt * eMax / hb >= 0.5) {
            std::ostringstream msg;
            msg << "evolve: dt*Emax/hbar = " << dt * eMax / hb
                << " >= 0.5; time step undersamples the fastest phase";
            emit_warning(msg.str());
        }
    }

    // Initial state, renormalised to exactly unit discrete norm.
    std::vector<cd> psi(n);
    for (std::size_t j = 0; j < n; ++j)
        psi[j] = position_amplitude(packet, grid.coordinate(j));
    psi.front() = 0.0;
    psi.back() = 0.0;
    {
        const double nrm = grid_norm(psi, dz);
        if (!(nrm > 0.0))
            throw std::invalid_argument("evolve: packet has no support on the grid");
        const double inv = 1.0 / std::sqrt(nrm);
        for (cd& x : psi)
            x *= inv;
    }

    // Cayley scheme with constant tridiagonal LHS: precompute the Thomas
    // forward-elimination coefficients once.
    const double c0 = hb * hb / (2.0 * m * dz * dz);
    const cd ieta = cd(0.0, dt / (2.0 * hb));
    const cd off = -ieta * c0;          // LHS off-diagonal
    const cd offB = ieta * c0;          // RHS off-diagonal
    const std::size_t ni = n - 2;       // interior nodes 1..n-2

    std::vector<cd> diag(ni), diagB(ni), cp(ni), denomInv(ni);
    for (std::size_t i = 0; i < ni; ++i) {
        const double hdiag = 2.0 * c0 + v[i + 1];
        diag[i] = 1.0 + ieta * hdiag;
        diagB[i] = 1.0 - ieta * hdiag;
    }
    cp[0] = off / diag[0];
    denomInv[0] = 1.0 / diag[0];
    for (std::size_t i = 1; i < ni; ++i) {
        const cd den = diag[i] - off * cp[i - 1];
        denomInv[i] = 1.0 / den;
        cp[i] = off * denomInv[i];
    }

    const auto steps = static_cast<std::size_t>(std::ceil(options.tMax / dt - 1e-12));

    // Snapshot schedule: nearest step per requested time, deduplicated.
    std::vector<std::pair<std::size_t, double>> snaps;
    for (double ts : options.snapshotTimes) {
        const auto sIdx = static_cast<std::size_t>(
            std::clamp(std::lround(ts / dt), long(0), static_cast<long>(steps)));
        snaps.emplace_back(sIdx, ts);
    }
    std::sort(snaps.begin(), snaps.end());

    PropagationReport rep;
    rep.tMax = static_cast<double>(steps) * dt; // actually evolved time
    rep.dt = dt;
    rep.steps = steps;

    auto boundary_density = [&]() {
        return std::max(std::norm(psi[1]), std::norm(psi[n - 2])) * dz;
    };
    auto take_snapshots = [&](std::size_t step) {
        if (!options.snapshotSink)
            return;
        for (const auto& [sIdx, ts] : snaps)
            if (sIdx == step)
                options.snapshotSink(PacketState{psi, static_cast<double>(step) * dt});
    };

    rep.boundaryMax = boundary_density();
    take_snapshots(0);

    std::vector<cd> rhs(ni), dp(ni);
    for (std::size_t step = 1; step <= steps; ++step) {
        // RHS = (1 - i dt H / 2 hbar) psi, interior nodes only. The wall
        // values psi[0] and psi[n-1] are exactly zero and never written, so
        // the neighbour reads need no branches.
        for (std::size_t i = 0; i < ni; ++i)
            rhs[i] = diagB[i] * psi[i + 1] + offB * (psi[i] + psi[i + 2]);
        dp[0] = rhs[0] * denomInv[0];
        for (std::size_t i = 1; i < ni; ++i)
            dp[i] = (rhs[i] - off * dp[i - 1]) * denomInv[i];
        psi[ni] = dp[ni - 1];
        for (std::size_t i = ni - 1; i-- > 0;)
            psi[i + 1] = dp[i] - cp[i] * psi[i + 2];

        rep.boundaryMax = std::max(rep.boundaryMax, boundary_density());
        if (rep.boundaryMax > options.boundaryTolerance) {
            std::ostringstream msg;
            msg << "evolve: boundary-cell density " << rep.boundaryMax << " exceeds "
                << options.boundaryTolerance << " at t=" << static_cast<double>(step) * dt
                << "; grid span too small for this run";
            throw BoundaryError(msg.str(), rep);
        }
        if (step % 32 == 0 || step == steps) {
            rep.normDrift =
                std::max(rep.normDrift, std::abs(grid_norm(psi, dz) - 1.0));
        }
        take_snapshots(step);
    }

    // Final channel split relative to the clock window.
    const double wl = potential.window().left, wr = potential.window().right;
    double pT = 0.0, pR = 0.0, pIn = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double z = grid.coordinate(j);
        const double w = std::norm(psi[j]) * dz;
        if (z > wr)
            pT += w;
        else if (z < wl)
            pR += w;
        else
            pIn += w;
    }
    rep.probT = pT;
    rep.probR = pR;
    rep.probInside = pIn;

    if (rep.probInside > options.insideTolerance) {
        std::ostringstream msg;
        msg << "evolve: " << rep.probInside << " of the probability is still inside the "
            << "clock window at tMax=" << options.tMax << " (tolerance "
            << options.insideTolerance << "); transmission/reflection split not asymptotic";
        throw AsymptoticError(msg.str(), rep);
    }
    return rep;
}

std::vector<std::pair<double, double>> snapshot_density(const PacketState& state,
                                                        const Grid1D& grid) {
    std::vector<std::pair<double, double>> rows;
    rows.reserve(state.psi.size());
    for (std::size_t j = 0; j < state.psi.size(); ++j)
        rows.emplace_back(grid.coordinate(j), std::norm(state.psi[j]));
    return rows;
}

} // namespace swpclock
