#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace tlsdyn {

/// Dissipative bosonic environment with a Lorentz spectral density peaked at
/// the TLS transition frequency. All frequencies share one dimensionless unit
/// system (hbar = kB = 1).
struct LorentzBath {
    double alpha;    ///< dimensionless coupling constant
    double omega_c;  ///< cutoff frequency (Lorentz half width)
    double epsilon;  ///< TLS transition frequency, also the Lorentz peak center

    void validate() const {
        if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
        if (!(omega_c > 0.0)) throw std::invalid_argument("omega_c must be positive");
        if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    }
};

/// J(omega) = (1/pi) * alpha * omega_c / ((omega - epsilon)^2 + omega_c^2).
/// Total function; negative-frequency arguments are allowed (the kernel
/// integrals extend over the whole real line).
double spectral_density(const LorentzBath& bath, double omega);

/// Zero-temperature bath correlation C(t) = alpha * exp(-(omega_c + i*epsilon) t).
std::complex<double> correlation_function(const LorentzBath& bath, double t);

}  // namespace tlsdyn
