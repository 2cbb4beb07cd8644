#pragma once

#include <complex>

#include "swpclock/params.hpp"

namespace swpclock {

/// 2x2 complex transfer matrix in the plane-wave amplitude basis, with the
/// convention (A_left, B_left)^T = M (A_right, B_right)^T for
/// psi = A e^{ikz} + B e^{-ikz} on either side. Unimodular for real
/// potentials (flux conservation).
struct TransferMatrix {
    std::complex<double> m11{1.0, 0.0}, m12{0.0, 0.0};
    std::complex<double> m21{0.0, 0.0}, m22{1.0, 0.0};

    static TransferMatrix identity() { return {}; }

    TransferMatrix operator*(const TransferMatrix& o) const {
        return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
                m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
    }

    std::complex<double> determinant() const { return m11 * m22 - m12 * m21; }
};

/// Matching matrix across a delta spike of the given strength at fixed
/// wavenumber k (amplitude basis, local phase references on both sides):
///   [[1 + i a, i a], [-i a, 1 - i a]],  a = mass * strength / (hbar^2 k).
/// Identity at zero strength; determinant exactly 1.
TransferMatrix delta_matching_matrix(double strength, const PhysicalParams& params, double k);

/// 2x2 real transfer matrix in the (psi, psi') basis across one constant
/// region, entire in kp2 = 2 mass (E - V) / hbar^2 (no branch cut between
/// propagating and evanescent regions). To keep entries representable at
/// high opacity the stored matrix is the true one times exp(-log_scale);
/// log_scale >= 0 and is only nonzero for evanescent regions.
struct WaveMatrix {
    double m11 = 1.0, m12 = 0.0;
    double m21 = 0.0, m22 = 1.0;
    double log_scale = 0.0;

    static WaveMatrix identity() { return {}; }

    WaveMatrix operator*(const WaveMatrix& o) const {
        return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
                m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22,
                log_scale + o.log_scale};
    }

    /// Determinant of the scaled entries; the true matrix determinant is
    /// det() * exp(2 log_scale).
    double det() const { return m11 * m22 - m12 * m21; }
};

/// Transfer across a constant region of the given width:
///   propagating (kp2 > 0, q = sqrt(kp2)):  [[cos qw, sin(qw)/q], [-q sin qw, cos qw]]
///   evanescent  (kp2 < 0, K = sqrt(-kp2)): cosh/sinh analogue, scaled by e^{-Kw}
///   |kp2| w^2 < 1e-6: series expansion (continuous through kp2 = 0).
WaveMatrix segment_wave_matrix(double kp2, double width);

/// Matching across a delta spike in the (psi, psi') basis: psi continuous,
/// psi' jumps by g psi with g = 2 mass strength / hbar^2.
WaveMatrix delta_wave_matrix(double strength, const PhysicalParams& params);

} // namespace swpclock
