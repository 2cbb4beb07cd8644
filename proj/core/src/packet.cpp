#include "swpclock/packet.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "swpclock/warnings.hpp"

namespace swpclock {

namespace {
constexpr double pi = std::numbers::pi;
}

void GaussianPacket::validate() const {
    if (!(sigma > 0.0))
        throw std::invalid_argument("GaussianPacket: sigma must be positive");
    if (!(k0 > 0.0))
        throw std::invalid_argument("GaussianPacket: k0 must be positive");
    if (!std::isfinite(z0))
        throw std::invalid_argument("GaussianPacket: z0 must be finite");
    if (k0 * sigma < 5.0) {
        std::ostringstream msg;
        msg << "GaussianPacket: k0*sigma = " << k0 * sigma
            << " < 5; the negative-k tail of the packet is not negligible";
        emit_warning(msg.str());
    }
}

std::complex<double> momentum_amplitude(const GaussianPacket& packet, double k) {
    const double dk = k - packet.k0;
    const double mag = std::pow(8.0 * pi, 0.25) * std::sqrt(packet.sigma) *
                       std::exp(-packet.sigma * packet.sigma * dk * dk);
    return std::polar(mag, -dk * packet.z0);
}

double spectral_weight(const GaussianPacket& packet, double k) {
    const double dk = k - packet.k0;
    const double mag2 = std::sqrt(8.0 * pi) * packet.sigma *
                        std::exp(-2.0 * packet.sigma * packet.sigma * dk * dk);
    return mag2 / (2.0 * pi);
}

std::complex<double> position_amplitude(const GaussianPacket& packet, double z) {
    const double u = z - packet.z0;
    const double mag = std::pow(2.0 * pi * packet.sigma * packet.sigma, -0.25) *
                       std::exp(-u * u / (4.0 * packet.sigma * packet.sigma));
    return std::polar(mag, packet.k0 * z);
}

double initial_right_probability(const GaussianPacket& packet) {
    // Int_0^inf |Phi|^2 dz with Phi centred at z0.
    return 0.5 * std::erfc(-packet.z0 / (packet.sigma * std::sqrt(2.0)));
}

} // namespace swpclock
