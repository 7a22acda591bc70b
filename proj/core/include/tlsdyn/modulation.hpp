#pragma once

#include <complex>

#include "tlsdyn/bath.hpp"
#include "tlsdyn/laplace.hpp"
#include "tlsdyn/modulator.hpp"
#include "tlsdyn/time_grid.hpp"
#include "tlsdyn/trace.hpp"

namespace tlsdyn {

/// Bessel function of the first kind, order zero. Power series for
/// |x| <= 12, Hankel asymptotic expansion beyond; |result| <= 1.
double bessel_j0(double x);

/// Coupling constant seen by the bath under a high-frequency sigma_z drive:
/// alpha_eff = J0(A/Omega)^2 * alpha, always in [0, alpha]. Downstream
/// dynamics of a driven system is the bare pipeline run at alpha_eff.
double effective_alpha(const DriveMod& drive, double alpha);

/// Super-Ohmic reservoir spectral density (1/pi) chi eps^2 / (eps^2 + eta^2).
double reservoir_spectral_density(const ReservoirMod& spec, double eps);

/// Reservoir modulation function G(t) = exp(Lambda e^{-eta t} - Lambda);
/// real-valued for this spectral family. Its Poisson series expansion is what
/// feeds the multimode Laplace kernel.
std::complex<double> modulation_G(double t, double Lam, double eta);

/// P(t) of the driven TLS: the bare Laplace pipeline evaluated at the
/// renormalized coupling, bit-identical to population_trace_laplace on
/// kernel_bare with alpha replaced by effective_alpha.
PopulationTrace driven_trace(const LorentzBath& bath, const DriveMod& drive, double rho_ee0,
                             const TimeGrid& grid);

}  // namespace tlsdyn
