#include "tlsdyn/laplace.hpp"

namespace tlsdyn {

LaplaceKernel kernel_bare(const LorentzBath& bath) {
    bath.validate();
    return {KernelFamily::bare, bath.alpha, bath.omega_c, 0.0, 0.0, {}};
}

LaplaceKernel kernel_single_mode(const LorentzBath& bath, double lam, double omega0, double tol) {
    bath.validate();
    if (!(lam >= 0.0)) throw std::invalid_argument("lambda must be non-negative");
    if (!(omega0 > 0.0)) throw std::invalid_argument("omega0 must be positive");
    return {KernelFamily::single_mode, bath.alpha, bath.omega_c, lam, omega0,
            poisson_weights(lam, tol)};
}

LaplaceKernel kernel_multimode(const LorentzBath& bath, double Lam, double eta, double tol) {
    bath.validate();
    if (!(Lam >= 0.0)) throw std::invalid_argument("Lambda must be non-negative");
    if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
    return {KernelFamily::multimode, bath.alpha, bath.omega_c, Lam, eta,
            poisson_weights(Lam, tol)};
}

PopulationTrace population_trace_laplace(const LaplaceKernel& kernel, double rho_ee0,
                                         const TimeGrid& grid) {
    if (!(rho_ee0 >= 0.0 && rho_ee0 <= 1.0))
        throw std::invalid_argument("rho_ee0 must lie in [0, 1]");
    PopulationTrace trace;
    trace.solver_tag = SolverTag::laplace;
    trace.times = grid.times();
    trace.values.reserve(trace.times.size());
    trace.params = {{"alpha", kernel.alpha},
                    {"omega_c", kernel.omega_c},
                    {"mod_param", kernel.mod_param},
                    {"mod_freq", kernel.mod_freq},
                    {"rho_ee0", rho_ee0}};
    const auto resolvent = [&](std::complex<double> z) { return rho_ee0 / (z + kernel(z)); };
    for (double t : trace.times) {
        if (t == 0.0)
            trace.values.push_back(2.0 * rho_ee0 - 1.0);
        else
            trace.values.push_back(2.0 * zakian_invert(resolvent, t) - 1.0);
    }
    return trace;
}

}  // namespace tlsdyn
