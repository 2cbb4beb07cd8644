#include "swpclock/resonance.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "swpclock/clock_times.hpp"
#include "swpclock/scattering.hpp"

namespace swpclock {

namespace {

// Branch-resolved resonance function: strictly increasing, one root per n.
double branch_fn(double k, double d, double hbar, double mass, double g, int n) {
    return k * d + std::atan(hbar * hbar * k / (mass * g)) - n * std::numbers::pi;
}

// F(k) = 2 a (a sin kd + cos kd) with a = mass g / (hbar^2 k); |T|^2 = 1/(1+F^2).
double peak_fn(double k, double d, double hbar, double mass, double g) {
    const double a = mass * g / (hbar * hbar * k);
    return 2.0 * a * (a * std::sin(k * d) + std::cos(k * d));
}

} // namespace

std::vector<Resonance> find_resonances(double strength, double spacing,
                                       const PhysicalParams& params, double kMin, double kMax) {
    params.validate();
    if (!(strength > 0.0) || !(spacing > 0.0))
        throw std::invalid_argument("find_resonances: need strength > 0 and spacing > 0");
    if (!(kMax > kMin) || !(kMin >= 0.0))
        throw std::invalid_argument("find_resonances: need 0 <= kMin < kMax");

    const double hb = params.hbar, m = params.mass, d = spacing, g = strength;
    std::vector<Resonance> out;

    for (int n = 1;; ++n) {
        double lo = (n - 0.5) * std::numbers::pi / d;
        double hi = n * std::numbers::pi / d;
        if (lo > kMax)
            break;
        // branch_fn(lo) < 0 < branch_fn(hi) always (arctan < pi/2).
        for (int it = 0; it < 200; ++it) {
            const double midp = 0.5 * (lo + hi);
            if (branch_fn(midp, d, hb, m, g, n) < 0.0)
                lo = midp;
            else
                hi = midp;
            if (hi - lo <= 1e-12 * std::max(1.0, hi))
                break;
        }
        const double kn = 0.5 * (lo + hi);
        if (kn < kMin || kn > kMax)
            continue;

        Resonance r;
        r.index = n;
        r.k = kn;
        r.dwell = dwell_double_delta(g, d, params, kn);
        // Half-width of the Lorentzian |T|^2 dip structure: |F'(kn)|^{-1},
        // with F' from a central difference (F is smooth and O(1)-curved).
        const double h = 1e-6 * std::max(1.0, kn);
        const double fp =
            (peak_fn(kn + h, d, hb, m, g) - peak_fn(kn - h, d, hb, m, g)) / (2.0 * h);
        r.width = std::abs(fp) > 0.0 ? 1.0 / std::abs(fp) : 0.0;
        out.push_back(r);
    }
    return out;
}

double resonant_dwell(double strength, double spacing, const PhysicalParams& params, double kn) {
    params.validate();
    if (!(kn > 0.0))
        throw std::invalid_argument("resonant_dwell: kn must be positive");
    const double hb = params.hbar, m = params.mass;
    const double gg = m * strength / (hb * hb); // gamma in inverse-length units
    return m / (hb * kn * kn * kn) *
           (2.0 * gg + (2.0 * gg * gg + kn * kn) * spacing);
}

} // namespace swpclock
