#include "swpclock/transfer_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace swpclock {

TransferMatrix delta_matching_matrix(double strength, const PhysicalParams& params, double k) {
    params.validate();
    if (!(k > 0.0))
        throw std::invalid_argument("delta_matching_matrix: k must be positive");
    const double a = params.mass * strength / (params.hbar * params.hbar * k);
    const std::complex<double> ia(0.0, a);
    return {1.0 + ia, ia, -ia, 1.0 - ia};
}

WaveMatrix segment_wave_matrix(double kp2, double width) {
    if (!(width >= 0.0))
        throw std::invalid_argument("segment_wave_matrix: width must be >= 0");
    const double y = kp2 * width * width;

    if (std::abs(y) < 1e-6) {
        // Series through the kp2 = 0 threshold; relative error O(y^3) <= 1e-18.
        WaveMatrix m;
        m.m11 = m.m22 = 1.0 - y / 2.0 + y * y / 24.0;
        m.m12 = width * (1.0 - y / 6.0 + y * y / 120.0);
        m.m21 = -kp2 * m.m12;
        return m;
    }

    if (kp2 > 0.0) {
        const double q = std::sqrt(kp2);
        const double c = std::cos(q * width);
        const double s = std::sin(q * width);
        return {c, s / q, -q * s, c, 0.0};
    }

    // Evanescent: factor out e^{K width} so entries stay O(1) at any opacity.
    const double kap = std::sqrt(-kp2);
    const double e2 = std::exp(-2.0 * kap * width);
    const double sum = 0.5 * (1.0 + e2);
    const double dif = 0.5 * (1.0 - e2);
    return {sum, dif / kap, kap * dif, sum, kap * width};
}

WaveMatrix delta_wave_matrix(double strength, const PhysicalParams& params) {
    const double g = 2.0 * params.mass * strength / (params.hbar * params.hbar);
    return {1.0, 0.0, g, 1.0, 0.0};
}

} // namespace swpclock
