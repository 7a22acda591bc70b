#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

#include "tlsdyn/bath.hpp"
#include "tlsdyn/poisson.hpp"
#include "tlsdyn/time_grid.hpp"
#include "tlsdyn/trace.hpp"

namespace tlsdyn {

enum class KernelFamily { bare, single_mode, multimode };

/// Laplace-domain memory kernel mu(z) of the population equation
/// rho_ee(z)/rho_ee(0) = 1/(z + mu(z)). The Poisson weight table is computed
/// once at construction and reused for every evaluation of a trace (the
/// inversion samples the kernel five times per grid point).
///
/// mu is a real-coefficient series, so mu(conj z) == conj(mu(z)).
struct LaplaceKernel {
    KernelFamily family = KernelFamily::bare;
    double alpha = 0.0;
    double omega_c = 0.0;
    double mod_param = 0.0;  // lambda (single_mode) or Lambda (multimode); 0 for bare
    double mod_freq = 0.0;   // omega0 (single_mode) or eta (multimode); 0 for bare
    std::vector<PoissonTerm> weights;

    std::complex<double> operator()(std::complex<double> z) const {
        using cd = std::complex<double>;
        switch (family) {
            case KernelFamily::bare:
                return 2.0 * alpha / (z + omega_c);
            case KernelFamily::single_mode: {
                const cd zc = z + omega_c;
                const cd zc2 = zc * zc;
                cd sum = 0.0;
                for (const auto& t : weights) {
                    const double lw = static_cast<double>(t.l) * mod_freq;
                    sum += t.weight * zc / (zc2 + lw * lw);
                }
                return 2.0 * alpha * sum;
            }
            case KernelFamily::multimode: {
                cd sum = 0.0;
                for (const auto& t : weights)
                    sum += t.weight / (z + omega_c + static_cast<double>(t.l) * mod_freq);
                return 2.0 * alpha * sum;
            }
        }
        throw std::runtime_error("unreachable kernel family");
    }
};

/// Kernel of the unmodulated TLS: mu(z) = 2 alpha / (z + omega_c).
LaplaceKernel kernel_bare(const LorentzBath& bath);

/// Single-mode oscillator modulation:
/// mu(z) = 2 alpha sum_l w_l (z+omega_c) / ((z+omega_c)^2 + l^2 omega0^2).
LaplaceKernel kernel_single_mode(const LorentzBath& bath, double lam, double omega0, double tol);

/// Multi-mode reservoir modulation:
/// mu(z) = 2 alpha sum_l w_l(Lambda) / (z + omega_c + l eta).
LaplaceKernel kernel_multimode(const LorentzBath& bath, double Lam, double eta, double tol);

namespace detail {
struct ZakianTerm {
    std::complex<double> a;
    std::complex<double> K;
};
// Five-term conjugate-pair constant table of the Zakian inversion method.
// Transcribed from the published tables; the unit-test oracle suite checks
// the table against analytic transform pairs before any solver use.
inline constexpr std::array<ZakianTerm, 5> kZakianTable{{
    {{12.83767675, 1.666063445}, {-36902.08210, 196990.4257}},
    {{12.22613209, 5.012718792}, {61277.02524, -95408.62551}},
    {{10.93430308, 8.409673116}, {-28916.56288, 18169.18531}},
    {{8.776434715, 11.92185389}, {4655.361138, -1.901528642}},
    {{5.225453361, 15.72952905}, {-118.7414011, -141.3036911}},
}};
}  // namespace detail

/// Numerical inverse Laplace transform f(t) = (2/t) sum_j Re[K_j F(a_j/t)].
/// Requires t > 0 and F analytic and decaying in the right half plane; the
/// resolvent forms used here satisfy both. Callers must handle t = 0
/// analytically.
template <class F>
double zakian_invert(F&& transform, double t) {
    if (!(t > 0.0))
        throw std::invalid_argument("inversion undefined at t <= 0");
    double sum = 0.0;
    for (const auto& term : detail::kZakianTable)
        sum += std::real(term.K * transform(term.a / t));
    return 2.0 * sum / t;
}

/// P(t) = 2 L^{-1}[rho_ee0 / (z + mu(z))](t) - 1, sampled on the grid.
/// t = 0 is returned exactly as 2 rho_ee0 - 1.
PopulationTrace population_trace_laplace(const LaplaceKernel& kernel, double rho_ee0,
                                         const TimeGrid& grid);

}  // namespace tlsdyn
