#include "swpclock/clock_times.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "swpclock/scattering.hpp"
#include "swpclock/warnings.hpp"

namespace swpclock {

namespace {

double wrap_angle(double a) {
    while (a > std::numbers::pi) a -= 2.0 * std::numbers::pi;
    while (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
    return a;
}

// Base clock shift: 1e-6 of the smallest energy scale in the problem
// (the energy itself and the distances to segment thresholds), floored at
// 1e-9 E so the finite difference never degenerates when E hits a threshold
// exactly.
double clock_shift(const Potential& pot, const PhysicalParams& pp, double k) {
    const double E = pp.energy(k);
    double scale = E;
    for (const auto& s : pot.segments())
        if (s.height != 0.0)
            scale = std::min(scale, std::abs(s.height - E));
    return std::max(1e-6 * scale, 1e-9 * E);
}

struct PhasePair {
    double dPhiT = 0.0; // arg(T(+s) conj(T(-s)))
    double dPhiR = 0.0;
    double dLogMagT = 0.0;
};

PhasePair phase_differences(const Potential& pot, const PhysicalParams& pp, double k, double s) {
    const ScatteringResult plus = amplitudes(pot, pp, k, +s);
    const ScatteringResult minus = amplitudes(pot, pp, k, -s);
    PhasePair d;
    d.dPhiT = wrap_angle(plus.phiT - minus.phiT);
    d.dPhiR = wrap_angle(plus.phiR - minus.phiR);
    d.dLogMagT = plus.logMagT - minus.logMagT;
    return d;
}

} // namespace

ClockTimes clock_times(const Potential& potential, const PhysicalParams& params, double k) {
    params.validate();
    if (!(k > 0.0) || !std::isfinite(k))
        throw std::invalid_argument("clock_times: k must be positive and finite");

    ClockTimes ct;
    ct.k = k;

    // The reflected phase is undefined where the bare reflection vanishes.
    const ScatteringResult bare = amplitudes(potential, params, k);
    ct.tRValid = std::sqrt(bare.probR) >= 1e-12;

    double s = clock_shift(potential, params, k);
    PhasePair d1 = phase_differences(potential, params, k, s);

    // Each phase difference carries an absolute arg() noise floor of a few
    // 1e-16 rad. Deep in a tunnelling tail the times (hence the signals
    // 2 s t / hbar) become so small that the base step leaves the signal near
    // that floor; grow the step until every used channel clears 1e-7 rad.
    // The growth cap of 1e4 keeps s at or below 1e-2 of the energy scale, so
    // the finite difference stays well inside the linear-response regime
    // (and Richardson removes the leading truncation term anyway). Phases
    // large enough to risk wrapping never trigger the escalation.
    const double phaseTarget = 1e-7;
    const double sCap = 1e4 * s;
    for (int iter = 0; iter < 4; ++iter) {
        double signal = std::abs(d1.dPhiT);
        double largest = std::abs(d1.dPhiT);
        if (ct.tRValid) {
            signal = std::min(signal, std::abs(d1.dPhiR));
            largest = std::max(largest, std::abs(d1.dPhiR));
        }
        if (signal >= phaseTarget || s >= sCap)
            break;
        double factor = signal > 0.0 ? 1.2 * phaseTarget / signal : sCap / s;
        factor = std::min(factor, sCap / s);
        if (largest > 0.0) // never wrap the stronger channel past ~1 rad
            factor = std::min(factor, 1.0 / largest);
        if (factor <= 1.0)
            break;
        s *= factor;
        d1 = phase_differences(potential, params, k, s);
    }
    ct.step = s;

    const PhasePair d2 = phase_differences(potential, params, k, 0.5 * s);

    const double tT1 = -params.hbar * d1.dPhiT / (2.0 * s);
    const double tT2 = -params.hbar * d2.dPhiT / s;
    ct.tT = (4.0 * tT2 - tT1) / 3.0;
    ct.errT = std::abs(tT2 - tT1) / 3.0;
    ct.modulusSensitivity = std::abs(std::expm1(d2.dLogMagT));

    if (ct.tRValid) {
        const double tR1 = -params.hbar * d1.dPhiR / (2.0 * s);
        const double tR2 = -params.hbar * d2.dPhiR / s;
        ct.tR = (4.0 * tR2 - tR1) / 3.0;
        ct.errR = std::abs(tR2 - tR1) / 3.0;
    }

    ct.dwell = stationary_dwell(potential, params, k);

    if (ct.errT > 1e-6 * std::max(std::abs(ct.tT), 1e-15)) {
        std::ostringstream msg;
        msg << "clock_times: transmission truncation estimate " << ct.errT << " at k=" << k
            << " exceeds 1e-6 of |t_T|=" << std::abs(ct.tT);
        emit_warning(msg.str());
    }
    if (ct.tRValid && ct.errR > 1e-6 * std::max(std::abs(ct.tR), 1e-15)) {
        std::ostringstream msg;
        msg << "clock_times: reflection truncation estimate " << ct.errR << " at k=" << k
            << " exceeds 1e-6 of |t_R|=" << std::abs(ct.tR);
        emit_warning(msg.str());
    }
    return ct;
}

double clock_time_transmission(const Potential& potential, const PhysicalParams& params,
                               double k) {
    return clock_times(potential, params, k).tT;
}

double clock_time_reflection(const Potential& potential, const PhysicalParams& params,
                             double k) {
    const ClockTimes ct = clock_times(potential, params, k);
    if (!ct.tRValid)
        throw std::domain_error("clock_time_reflection: |R| < 1e-12, reflected phase undefined");
    return ct.tR;
}

double dwell_rectangular(double height, double width, const PhysicalParams& params, double k) {
    params.validate();
    if (!(k > 0.0))
        throw std::invalid_argument("dwell_rectangular: k must be positive");
    if (!(width > 0.0) || !(height >= 0.0))
        throw std::invalid_argument("dwell_rectangular: need width > 0, height >= 0");

    const double hb = params.hbar, m = params.mass;
    const double a = width;
    const double E = params.energy(k);
    const double w = 2.0 * m * (height - E) / (hb * hb); // q^2, signed
    const double k2 = k * k;

    if (std::abs(w) * a * a < 1e-6) {
        // Series through E = V: numerator/denominator expanded in w = q^2.
        const double a2 = a * a, a3 = a2 * a, a4 = a2 * a2, a5 = a4 * a, a6 = a4 * a2,
                     a7 = a6 * a;
        const double n0 = 2.0 * a + (2.0 / 3.0) * k2 * a3;
        const double n1 = -(4.0 / 3.0) * a3 - (8.0 / 15.0) * k2 * a5;
        const double n2 = (4.0 / 5.0) * a5 + (34.0 / 105.0) * k2 * a7;
        const double d0 = 4.0 * k2 + k2 * k2 * a2;
        const double d1 = -2.0 * k2 * a2 - (2.0 / 3.0) * k2 * k2 * a4;
        const double d2 = a2 + (4.0 / 3.0) * k2 * a4 + (17.0 / 45.0) * k2 * k2 * a6;
        const double num = n0 + w * (n1 + w * n2);
        const double den = d0 + w * (d1 + w * d2);
        return (m / hb) * 2.0 * k * num / den;
    }

    if (w > 0.0) { // tunnelling
        const double q = std::sqrt(w);
        const double qa = q * a;
        const double th = std::tanh(qa);
        const double se = 2.0 * std::exp(-qa) / (1.0 + std::exp(-2.0 * qa)); // sech, safe for large qa
        const double q2 = w;
        const double num = (k2 + q2) * th + qa * (q2 - k2) * se * se;
        const double den = 4.0 * q2 * k2 + (q2 - k2) * (q2 - k2) * th * th;
        return (2.0 * m * k / (hb * q)) * num / den;
    }

    // Above the barrier (q -> i k1); num/den multiplied through by cos^2 so
    // nothing blows up at k1 a = pi/2.
    const double k1 = std::sqrt(-w);
    const double k12 = -w;
    const double c = std::cos(k1 * a), si = std::sin(k1 * a);
    const double num = k1 * a * (k2 + k12) - (k2 - k12) * si * c;
    const double den = 4.0 * k12 * k2 * c * c + (k12 + k2) * (k12 + k2) * si * si;
    return (2.0 * m * k / (hb * k1)) * num / den;
}

double dwell_double_delta(double strength, double spacing, const PhysicalParams& params,
                          double k) {
    params.validate();
    if (!(k > 0.0))
        throw std::invalid_argument("dwell_double_delta: k must be positive");
    if (!(spacing > 0.0) || !(strength >= 0.0))
        throw std::invalid_argument("dwell_double_delta: need spacing > 0, strength >= 0");

    const double alpha = params.mass * strength / (params.hbar * params.hbar * k);
    const double kd = k * spacing;
    const double s = std::sin(kd), c = std::cos(kd);
    const double probTinv = 1.0 + 4.0 * alpha * alpha * (alpha * s + c) * (alpha * s + c);
    const double num = (1.0 + 2.0 * alpha * alpha) * kd + 2.0 * alpha * s * s -
                       alpha * alpha * std::sin(2.0 * kd);
    return params.mass / (params.hbar * k * k) * num / probTinv;
}

double stationary_dwell(const Potential& potential, const PhysicalParams& params, double k) {
    const ClockWindow& w = potential.window();
    const double tol = 1e-12;
    switch (potential.kind()) {
        case PotentialKind::Rectangular:
            if (std::abs(w.left) < tol && std::abs(w.right - potential.barrier_width()) < tol)
                return dwell_rectangular(potential.barrier_height(), potential.barrier_width(),
                                         params, k);
            break;
        case PotentialKind::DoubleDelta:
            if (std::abs(w.left) < tol && std::abs(w.right - potential.delta_spacing()) < tol)
                return dwell_double_delta(potential.delta_strength(), potential.delta_spacing(),
                                          params, k);
            break;
        case PotentialKind::Piecewise:
            break;
    }
    return dwell_integral(potential, params, k);
}

double weighted_relation_residual(const Potential& potential, const PhysicalParams& params,
                                  double k) {
    const ClockTimes ct = clock_times(potential, params, k);
    const ScatteringResult sr = amplitudes(potential, params, k);
    const double combined = sr.probT * ct.tT + (ct.tRValid ? sr.probR * ct.tR : 0.0);
    return std::abs(ct.dwell - combined) / std::max(std::abs(ct.dwell), 1e-300);
}

double free_traversal_time(const Potential& potential, const PhysicalParams& params, double k) {
    if (!(k > 0.0))
        throw std::invalid_argument("free_traversal_time: k must be positive");
    return params.mass * potential.window().length() / (params.hbar * k);
}

} // namespace swpclock
