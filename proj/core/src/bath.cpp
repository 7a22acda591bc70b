#include "tlsdyn/bath.hpp"

#include <cmath>
#include <numbers>

namespace tlsdyn {

double spectral_density(const LorentzBath& bath, double omega) {
    const double d = omega - bath.epsilon;
    return bath.alpha * bath.omega_c / (std::numbers::pi * (d * d + bath.omega_c * bath.omega_c));
}

std::complex<double> correlation_function(const LorentzBath& bath, double t) {
    return bath.alpha * std::exp(std::complex<double>(-bath.omega_c * t, -bath.epsilon * t));
}

}  // namespace tlsdyn
