#include "tlsdyn/modulation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tlsdyn {

double bessel_j0(double x) {
    const double ax = std::abs(x);
    if (ax <= 12.0) {
        // sum_k (-1)^k (x^2/4)^k / (k!)^2
        const double q = 0.25 * ax * ax;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k <= 300; ++k) {
            term *= -q / (static_cast<double>(k) * static_cast<double>(k));
            sum += term;
            if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
        }
        return sum;
    }
    // Hankel expansion J0(x) = sqrt(2/(pi x)) [P cos(x - pi/4) - Q sin(x - pi/4)]
    const double u = 1.0 / ax;
    const double u2 = u * u;
    const double p =
        1.0 + u2 * (-0.0703125 +
                    u2 * (0.112152099609375 +
                          u2 * (-0.5725014209747314 + u2 * 6.074042001273483)));
    const double q =
        u * (-0.125 + u2 * (0.0732421875 +
                            u2 * (-0.2271080017089844 + u2 * 1.727727502584457)));
    const double chi = ax - 0.25 * std::numbers::pi;
    return std::sqrt(2.0 / (std::numbers::pi * ax)) * (p * std::cos(chi) - q * std::sin(chi));
}

double effective_alpha(const DriveMod& drive, double alpha) {
    drive.validate();
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    const double j = bessel_j0(drive.amplitude_A / drive.frequency_Omega);
    return j * j * alpha;
}

double reservoir_spectral_density(const ReservoirMod& spec, double eps) {
    spec.validate();
    return spec.chi * eps * eps / (std::numbers::pi * (eps * eps + spec.eta * spec.eta));
}

std::complex<double> modulation_G(double t, double Lam, double eta) {
    if (!(t >= 0.0)) throw std::invalid_argument("t must be non-negative");
    if (!(Lam >= 0.0)) throw std::invalid_argument("Lambda must be non-negative");
    if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
    return {std::exp(Lam * std::exp(-eta * t) - Lam), 0.0};
}

PopulationTrace driven_trace(const LorentzBath& bath, const DriveMod& drive, double rho_ee0,
                             const TimeGrid& grid) {
    LorentzBath renormalized = bath;
    renormalized.alpha = effective_alpha(drive, bath.alpha);
    PopulationTrace trace;
    if (renormalized.alpha == 0.0) {
        // complete decoupling at a Bessel zero: no dissipation channel left
        trace.solver_tag = SolverTag::laplace;
        trace.times = grid.times();
        trace.values.assign(trace.times.size(), 2.0 * rho_ee0 - 1.0);
        trace.params = {{"alpha", 0.0}, {"omega_c", bath.omega_c}, {"rho_ee0", rho_ee0}};
    } else {
        trace = population_trace_laplace(kernel_bare(renormalized), rho_ee0, grid);
    }
    trace.params["amplitude_A"] = drive.amplitude_A;
    trace.params["frequency_Omega"] = drive.frequency_Omega;
    return trace;
}

}  // namespace tlsdyn
