#include "swpclock/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "swpclock/transfer_matrix.hpp"

namespace swpclock {

namespace {

using cd = std::complex<double>;

// Region decomposition: sorted breakpoints z[0..n], constant kp2 = 2m(E-V)/hbar^2
// on each of the n regions between them, and a delta strength at each breakpoint.
struct RegionSet {
    std::vector<double> z;
    std::vector<double> kp2;      // size n = z.size()-1
    std::vector<double> spike;    // size z.size(), delta strengths
};

RegionSet build_regions(const Potential& pot, const PhysicalParams& pp, double energy,
                        double perturbation, bool includeWindowEdges) {
    std::vector<double> pts;
    for (const auto& s : pot.segments()) {
        pts.push_back(s.begin);
        pts.push_back(s.end);
    }
    for (const auto& d : pot.deltas())
        pts.push_back(d.position);
    if (perturbation != 0.0 || includeWindowEdges) {
        pts.push_back(pot.window().left);
        pts.push_back(pot.window().right);
    }

    RegionSet rs;
    if (pts.empty())
        return rs;

    std::sort(pts.begin(), pts.end());
    for (double p : pts) {
        if (rs.z.empty() || p - rs.z.back() > 1e-12 * std::max(1.0, std::abs(p)))
            rs.z.push_back(p);
    }
    rs.spike.assign(rs.z.size(), 0.0);
    for (const auto& d : pot.deltas()) {
        auto it = std::lower_bound(rs.z.begin(), rs.z.end(), d.position - 1e-9);
        std::size_t idx = static_cast<std::size_t>(it - rs.z.begin());
        if (idx + 1 < rs.z.size() &&
            std::abs(rs.z[idx + 1] - d.position) < std::abs(rs.z[idx] - d.position))
            ++idx;
        rs.spike[idx] += d.strength;
    }

    const double wl = pot.window().left, wr = pot.window().right;
    rs.kp2.resize(rs.z.size() > 0 ? rs.z.size() - 1 : 0);
    for (std::size_t i = 0; i + 1 < rs.z.size(); ++i) {
        const double mid = 0.5 * (rs.z[i] + rs.z[i + 1]);
        double v = pot.value(mid);
        if (perturbation != 0.0 && mid >= wl && mid <= wr)
            v += perturbation;
        rs.kp2[i] = 2.0 * pp.mass * (energy - v) / (pp.hbar * pp.hbar);
    }
    return rs;
}

bool region_in_window(const RegionSet& rs, std::size_t i, const ClockWindow& w) {
    const double mid = 0.5 * (rs.z[i] + rs.z[i + 1]);
    return mid >= w.left && mid <= w.right;
}

// Trapezoid-free closed-form Int_0^w |psi|^2 over one constant region, given
// right-edge values P = psi(z_r), Q = psi'(z_r). Entire in kp2 via the series
// branch; overflow-safe in the evanescent branch via decay/growth splitting.
double region_norm_integral(double kp2, double w, cd P, cd Q) {
    const double y = kp2 * w * w;

    if (std::abs(y) < 1e-2) {
        // psi(z_r - x) = cos(q x) P - sin(q x)/q Q; all three moment
        // integrals evaluated as series in y = kp2 w^2 (valid both signs).
        const double v2 = 4.0 * y; // (2 q w)^2
        const double t1 = 0.5 * w *
                          (2.0 - v2 / 6.0 + v2 * v2 / 120.0 - v2 * v2 * v2 / 5040.0);
        const double nested =
            1.0 - v2 / 20.0 * (1.0 - v2 / 42.0 * (1.0 - v2 / 72.0 * (1.0 - v2 / 110.0)));
        const double t2 = 0.5 * w * w * w * (4.0 / 6.0) * nested;
        const double sc = w * (1.0 - y / 6.0 + y * y / 120.0 - y * y * y / 5040.0);
        const double t3 = 0.5 * sc * sc;
        return std::norm(P) * t1 + std::norm(Q) * t2 - 2.0 * std::real(P * std::conj(Q)) * t3;
    }

    if (kp2 > 0.0) {
        const double q = std::sqrt(kp2);
        const double s2 = std::sin(2.0 * q * w) / (4.0 * q);
        const double sc = std::sin(q * w) / q;
        const double t1 = 0.5 * w + s2;
        const double t2 = (0.5 * w - s2) / kp2;
        const double t3 = 0.5 * sc * sc;
        return std::norm(P) * t1 + std::norm(Q) * t2 - 2.0 * std::real(P * std::conj(Q)) * t3;
    }

    // Evanescent: split psi = a e^{-K u} + b e^{K u} (u from the left edge).
    const double kap = std::sqrt(-kp2);
    const cd dR = 0.5 * (P - Q / kap);          // a e^{-K w}
    const cd gR = 0.5 * (P + Q / kap);          // b e^{K w}
    const cd aL = dR * std::exp(kap * w);       // a (left-edge decaying coefficient)
    const double decay = -std::expm1(-2.0 * kap * w) / (2.0 * kap);
    return (std::norm(aL) + std::norm(gR)) * decay +
           2.0 * std::real(aL * std::conj(gR)) * std::exp(-kap * w) * w;
}

// Step right-edge values (P, Q) to the left edge of the same region.
void backstep(double kp2, double w, cd& P, cd& Q) {
    const double y = kp2 * w * w;
    double c, sc; // cos(q w) analogue and sin(q w)/q analogue
    if (std::abs(y) < 1e-6) {
        c = 1.0 - y / 2.0 + y * y / 24.0;
        sc = w * (1.0 - y / 6.0 + y * y / 120.0);
    } else if (kp2 > 0.0) {
        const double q = std::sqrt(kp2);
        c = std::cos(q * w);
        sc = std::sin(q * w) / q;
    } else {
        const double kap = std::sqrt(-kp2);
        c = std::cosh(kap * w);
        sc = std::sinh(kap * w) / kap;
    }
    const cd Pl = c * P - sc * Q;
    const cd Ql = kp2 * sc * P + c * Q;
    P = Pl;
    Q = Ql;
}

struct Assembled {
    WaveMatrix M;
    double zl = 0.0, zr = 0.0;
    bool trivial = false;
};

Assembled assemble(const RegionSet& rs, const PhysicalParams& pp) {
    Assembled a;
    if (rs.z.empty()) {
        a.trivial = true;
        return a;
    }
    a.zl = rs.z.front();
    a.zr = rs.z.back();
    WaveMatrix M = WaveMatrix::identity();
    for (std::size_t i = 0; i < rs.z.size(); ++i) {
        if (rs.spike[i] != 0.0)
            M = delta_wave_matrix(rs.spike[i], pp) * M;
        if (i + 1 < rs.z.size())
            M = segment_wave_matrix(rs.kp2[i], rs.z[i + 1] - rs.z[i]) * M;
    }
    a.M = M;
    return a;
}

struct AmplitudeParts {
    cd m22, m21;     // scaled; true values carry e^{log_scale}
    double logScale;
};

// Convert the accumulated (psi, psi') matrix to amplitude-basis elements.
// Derived by matching psi = e^{ik(z-zl)} + r e^{-ik(z-zl)} to t e^{ik(z-zr)}.
AmplitudeParts amplitude_parts(const WaveMatrix& M, double k) {
    AmplitudeParts p;
    p.m22 = 0.5 * cd(M.m11 + M.m22, M.m21 / k - k * M.m12);
    p.m21 = 0.5 * cd(M.m11 - M.m22, k * M.m12 + M.m21 / k);
    p.logScale = M.log_scale;
    return p;
}

double wrap_angle(double a) {
    while (a > 3.14159265358979323846) a -= 2.0 * 3.14159265358979323846;
    while (a <= -3.14159265358979323846) a += 2.0 * 3.14159265358979323846;
    return a;
}

} // namespace

ScatteringResult amplitudes(const Potential& potential, const PhysicalParams& params, double k,
                            double perturbation) {
    params.validate();
    if (!(k > 0.0) || !std::isfinite(k))
        throw std::invalid_argument("amplitudes: k must be positive and finite");

    const double energy = params.energy(k);
    const RegionSet rs = build_regions(potential, params, energy, perturbation, false);
    const Assembled a = assemble(rs, params);

    ScatteringResult res;
    res.k = k;
    if (a.trivial) {
        res.T = 1.0;
        res.probT = 1.0;
        res.logMagT = 0.0;
        return res;
    }

    const AmplitudeParts p = amplitude_parts(a.M, k);
    const cd phaseLR = std::polar(1.0, k * (a.zl - a.zr));
    res.T = std::exp(-p.logScale) * phaseLR / p.m22;
    res.R = -(p.m21 / p.m22) * std::polar(1.0, 2.0 * k * a.zl);
    res.logMagT = -p.logScale - std::log(std::abs(p.m22));
    res.probT = std::exp(2.0 * res.logMagT);
    res.probR = std::norm(res.R);
    // Phase of T evaluated scale-free so it survives underflow of T itself.
    res.phiT = wrap_angle(k * (a.zl - a.zr) - std::arg(p.m22));
    res.phiR = std::arg(res.R);
    return res;
}

double closed_form_dd_probT(double strength, double spacing, const PhysicalParams& params,
                            double k) {
    params.validate();
    if (!(k > 0.0))
        throw std::invalid_argument("closed_form_dd_probT: k must be positive");
    const double alpha = params.mass * strength / (params.hbar * params.hbar * k);
    const double kd = k * spacing;
    const double s = alpha * std::sin(kd) + std::cos(kd);
    return 1.0 / (1.0 + 4.0 * alpha * alpha * s * s);
}

double dwell_integral(const Potential& potential, const PhysicalParams& params, double k) {
    params.validate();
    if (!(k > 0.0) || !std::isfinite(k))
        throw std::invalid_argument("dwell_integral: k must be positive and finite");

    const double energy = params.energy(k);
    const RegionSet rs = build_regions(potential, params, energy, 0.0, true);
    if (rs.z.size() < 2) {
        // Window of zero extent after merging; nothing to integrate over.
        return 0.0;
    }
    const Assembled a = assemble(rs, params);
    if (a.M.log_scale > 650.0)
        throw std::range_error("dwell_integral: evanescent decay exceeds e^650; "
                               "use the closed-form dwell for this potential");

    const AmplitudeParts p = amplitude_parts(a.M, k);
    const cd T = std::exp(-p.logScale) * std::polar(1.0, k * (a.zl - a.zr)) / p.m22;

    // March right-to-left, accumulating the window norm region by region.
    cd P = T * std::polar(1.0, k * a.zr);
    cd Q = cd(0.0, k) * P;
    double total = 0.0;
    const std::size_t n = rs.z.size() - 1;
    for (std::size_t ii = n; ii-- > 0;) {
        if (rs.spike[ii + 1] != 0.0) {
            const double g = 2.0 * params.mass * rs.spike[ii + 1] / (params.hbar * params.hbar);
            Q -= g * P;
        }
        const double w = rs.z[ii + 1] - rs.z[ii];
        if (region_in_window(rs, ii, potential.window()))
            total += region_norm_integral(rs.kp2[ii], w, P, Q);
        backstep(rs.kp2[ii], w, P, Q);
    }
    return params.mass / (params.hbar * k) * total;
}

} // namespace swpclock
