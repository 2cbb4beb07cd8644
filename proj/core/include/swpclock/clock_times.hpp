#pragma once

#include "swpclock/params.hpp"
#include "swpclock/potential.hpp"

namespace swpclock {

/// Quantum-clock readings for a stationary wave at wavenumber k. The clock
/// couples to the particle through a weak constant shift of the potential on
/// the clock window; the reading is the sensitivity of the transmitted /
/// reflected phase to that shift,
///   t_X = -hbar * d(arg X)/d(shift) at shift -> 0,  X in {T, R},
/// evaluated by a symmetric finite difference with one Richardson
/// extrapolation level. The phase difference is always computed as
/// arg(X(+s) conj(X(-s))) — never as a difference of separately unwrapped
/// phases — so branch crossings cannot corrupt it.
struct ClockTimes {
    double k = 0.0;
    double tT = 0.0;   ///< transmission clock time
    double tR = 0.0;   ///< reflection clock time (0 when !tRValid)
    bool tRValid = true; ///< false when |R| < 1e-12 (phase of R undefined)
    double dwell = 0.0;  ///< stationary dwell time (independent route)
    double errT = 0.0;   ///< Richardson truncation estimate for tT
    double errR = 0.0;   ///< same for tR
    double modulusSensitivity = 0.0; ///< |exp(ln|T(+s)| - ln|T(-s)|) - 1|
    double step = 0.0;   ///< base finite-difference shift actually used
};

/// Transmission clock time alone.
double clock_time_transmission(const Potential& potential, const PhysicalParams& params,
                               double k);

/// Reflection clock time alone; throws std::domain_error when |R| < 1e-12.
double clock_time_reflection(const Potential& potential, const PhysicalParams& params, double k);

/// Both clock times plus the stationary dwell and diagnostics (one shared set
/// of scattering solves). Emits a warning when a truncation estimate exceeds
/// 1e-6 relative.
ClockTimes clock_times(const Potential& potential, const PhysicalParams& params, double k);

/// Closed-form dwell time for a rectangular barrier (height V, width a),
/// continuous across E = V: tunnelling, threshold-series and above-barrier
/// branches agree to ~5e-10 at the switch points.
double dwell_rectangular(double height, double width, const PhysicalParams& params, double k);

/// Closed-form dwell time for strength*[delta(z) + delta(z - spacing)].
double dwell_double_delta(double strength, double spacing, const PhysicalParams& params,
                          double k);

/// Dwell time over the potential's clock window by the best available route:
/// the closed forms above for the canonical families with their natural
/// windows, otherwise the stationary |psi|^2 integral (dwell_integral).
double stationary_dwell(const Potential& potential, const PhysicalParams& params, double k);

/// Relative residual of the identity
///   tau_D = |T|^2 t_T + |R|^2 t_R
/// with tau_D from the independent stationary route. A consistency probe of
/// the whole stack; ~1e-8 or better away from thresholds.
double weighted_relation_residual(const Potential& potential, const PhysicalParams& params,
                                  double k);

/// mass * window_length / (hbar k): free flight across the clock window.
double free_traversal_time(const Potential& potential, const PhysicalParams& params, double k);

} // namespace swpclock
