#pragma once

#include <complex>
#include <vector>

#include "tlsdyn/bath.hpp"
#include "tlsdyn/laplace.hpp"
#include "tlsdyn/time_grid.hpp"
#include "tlsdyn/trace.hpp"

namespace tlsdyn {

/// Memory kernel of the population equation written as a finite exponential
/// sum, k(s) = sum_m weight_m (e^{-rate_m s} + e^{-conj(rate_m) s}).
/// After Poisson truncation this representation is exact, which lets the
/// integro-differential equation be rewritten as a plain ODE system with one
/// auxiliary variable per term (no convolution quadrature at all).
struct ExpSumTerm {
    double weight;
    std::complex<double> rate;  // Re(rate) > 0: decaying memory
};

struct ExpSumKernel {
    KernelFamily family = KernelFamily::bare;
    std::vector<ExpSumTerm> terms;
};

/// Single-mode modulation: rates omega_c + i l omega0, weights alpha w_l.
ExpSumKernel exp_sum_kernel_single_mode(const LorentzBath& bath, double lam, double omega0,
                                        double tol);

/// Reservoir modulation: real rates omega_c + l eta, weights alpha w_l(Lambda).
ExpSumKernel exp_sum_kernel_multimode(const LorentzBath& bath, double Lam, double eta, double tol);

/// Unmodulated kernel: the single term (alpha, omega_c).
ExpSumKernel exp_sum_kernel_bare(const LorentzBath& bath);

/// Fixed-step RK4 integration of the exact ODE reformulation
///   y_m' = rho_ee - rate_m y_m,  y_m(0) = 0,
///   rho_ee' = -2 sum_m weight_m Re[y_m],
/// sampled on the grid (internal substepping lands on every grid point).
/// Pass step = 0 to use the default, which resolves the fastest kernel
/// oscillation. No halving check is performed; see volterra_solve.
PopulationTrace volterra_solve_raw(const ExpSumKernel& kernel, double rho_ee0,
                                   const TimeGrid& grid, double step = 0.0);

/// volterra_solve_raw at the requested step and at half that step; throws
/// "step too coarse" if any sample moves by more than 1e-6, otherwise
/// returns the half-step result.
PopulationTrace volterra_solve(const ExpSumKernel& kernel, double rho_ee0, const TimeGrid& grid,
                               double step = 0.0);

/// Closed-form bare-TLS population difference,
///   P(t) = 2 e^{-omega_c t/2} [cosh(Theta t/2) + (omega_c/Theta) sinh(Theta t/2)] - 1,
/// Theta = sqrt(omega_c^2 - 8 alpha), evaluated in complex arithmetic so the
/// oscillatory regime omega_c^2 < 8 alpha needs no special casing. The
/// imaginary residue must stay below 1e-12 and is discarded.
double closed_form_P_lambda0(double t, double alpha, double omega_c);

/// Relaxation rate 1/T1 = 2 pi e^{-lam} sum_l (lam^l/l!) J(epsilon - l omega0),
/// evaluated through the Lorentz form as
///   (2 alpha / omega_c) e^{-lam} sum_l (lam^l/l!) omega_c^2/(l^2 omega0^2 + omega_c^2).
/// The lam = 0 limit is the Wigner-Weisskopf rate 2 alpha / omega_c.
double relaxation_rate(const LorentzBath& bath, double lam, double omega0, double tol);

/// Dephasing rate 1/T2, exactly half of relaxation_rate (same series, halved
/// prefactor).
double dephasing_rate(const LorentzBath& bath, double lam, double omega0, double tol);

/// P(t) ~= 2 e^{-t/T1} - 1 sampled on the grid; tagged exp_approx.
PopulationTrace exp_approx_trace(double T1, const TimeGrid& grid);

}  // namespace tlsdyn
