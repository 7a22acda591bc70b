#include "tlsdyn/time_domain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tlsdyn/poisson.hpp"

namespace tlsdyn {

ExpSumKernel exp_sum_kernel_single_mode(const LorentzBath& bath, double lam, double omega0,
                                        double tol) {
    bath.validate();
    if (!(lam >= 0.0)) throw std::invalid_argument("lambda must be non-negative");
    if (!(omega0 > 0.0)) throw std::invalid_argument("omega0 must be positive");
    ExpSumKernel kernel{KernelFamily::single_mode, {}};
    for (const auto& w : poisson_weights(lam, tol))
        kernel.terms.push_back(
            {bath.alpha * w.weight, {bath.omega_c, static_cast<double>(w.l) * omega0}});
    return kernel;
}

ExpSumKernel exp_sum_kernel_multimode(const LorentzBath& bath, double Lam, double eta,
                                      double tol) {
    bath.validate();
    if (!(Lam >= 0.0)) throw std::invalid_argument("Lambda must be non-negative");
    if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
    ExpSumKernel kernel{KernelFamily::multimode, {}};
    for (const auto& w : poisson_weights(Lam, tol))
        kernel.terms.push_back(
            {bath.alpha * w.weight, {bath.omega_c + static_cast<double>(w.l) * eta, 0.0}});
    return kernel;
}

ExpSumKernel exp_sum_kernel_bare(const LorentzBath& bath) {
    bath.validate();
    return {KernelFamily::bare, {{bath.alpha, {bath.omega_c, 0.0}}}};
}

namespace {

double default_step(const ExpSumKernel& kernel, double grid_step) {
    double fastest = 1.0;
    for (const auto& term : kernel.terms) fastest = std::max(fastest, std::abs(term.rate));
    return std::min(grid_step, 0.01 / fastest);
}

// One RK4 pass over [0, grid.t_end], recording P = 2 rho_ee - 1 at grid times.
std::vector<double> integrate(const ExpSumKernel& kernel, double rho_ee0,
                              const std::vector<double>& times, double h) {
    using cd = std::complex<double>;
    const std::size_t m = kernel.terms.size();

    struct State {
        double rho;
        std::vector<cd> y;
    };
    State s{rho_ee0, std::vector<cd>(m, 0.0)};
    State k1 = s, k2 = s, k3 = s, k4 = s, tmp = s;

    auto rhs = [&](const State& in, State& out) {
        double drho = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            drho -= 2.0 * kernel.terms[j].weight * in.y[j].real();
            out.y[j] = in.rho - kernel.terms[j].rate * in.y[j];
        }
        out.rho = drho;
    };
    auto add_scaled = [&](const State& base, const State& k, double c, State& out) {
        out.rho = base.rho + c * k.rho;
        for (std::size_t j = 0; j < m; ++j) out.y[j] = base.y[j] + c * k.y[j];
    };

    std::vector<double> values;
    values.reserve(times.size());
    double t = 0.0;
    for (double target : times) {
        const double span = target - t;
        if (span > 0.0) {
            const auto nsub = static_cast<std::size_t>(std::ceil(span / h - 1e-9));
            const double dt = span / static_cast<double>(std::max<std::size_t>(nsub, 1));
            for (std::size_t i = 0; i < std::max<std::size_t>(nsub, 1); ++i) {
                rhs(s, k1);
                add_scaled(s, k1, 0.5 * dt, tmp);
                rhs(tmp, k2);
                add_scaled(s, k2, 0.5 * dt, tmp);
                rhs(tmp, k3);
                add_scaled(s, k3, dt, tmp);
                rhs(tmp, k4);
                s.rho += dt / 6.0 * (k1.rho + 2.0 * k2.rho + 2.0 * k3.rho + k4.rho);
                for (std::size_t j = 0; j < m; ++j)
                    s.y[j] += dt / 6.0 * (k1.y[j] + 2.0 * k2.y[j] + 2.0 * k3.y[j] + k4.y[j]);
            }
            t = target;
        }
        values.push_back(2.0 * s.rho - 1.0);
    }
    return values;
}

}  // namespace

PopulationTrace volterra_solve_raw(const ExpSumKernel& kernel, double rho_ee0,
                                   const TimeGrid& grid, double step) {
    if (!(rho_ee0 >= 0.0 && rho_ee0 <= 1.0))
        throw std::invalid_argument("rho_ee0 must lie in [0, 1]");
    for (const auto& term : kernel.terms)
        if (!(term.rate.real() > 0.0))
            throw std::invalid_argument("kernel rates must have positive real part");
    PopulationTrace trace;
    trace.solver_tag = SolverTag::volterra;
    trace.times = grid.times();
    const double h = step > 0.0 ? step : default_step(kernel, grid.step());
    trace.values = integrate(kernel, rho_ee0, trace.times, h);
    trace.params = {{"rho_ee0", rho_ee0}, {"step", h},
                    {"n_terms", static_cast<double>(kernel.terms.size())}};
    return trace;
}

PopulationTrace volterra_solve(const ExpSumKernel& kernel, double rho_ee0, const TimeGrid& grid,
                               double step) {
    const double h = step > 0.0 ? step : default_step(kernel, grid.step());
    PopulationTrace coarse = volterra_solve_raw(kernel, rho_ee0, grid, h);
    PopulationTrace fine = volterra_solve_raw(kernel, rho_ee0, grid, 0.5 * h);
    double max_delta = 0.0;
    for (std::size_t i = 0; i < coarse.values.size(); ++i)
        max_delta = std::max(max_delta, std::abs(coarse.values[i] - fine.values[i]));
    if (max_delta > 1e-6)
        throw std::runtime_error("step too coarse: halving the step moved a sample by " +
                                 std::to_string(max_delta));
    fine.params["step"] = h;
    fine.params["halving_delta"] = max_delta;
    return fine;
}

double closed_form_P_lambda0(double t, double alpha, double omega_c) {
    if (!(t >= 0.0)) throw std::invalid_argument("t must be non-negative");
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    if (!(omega_c > 0.0)) throw std::invalid_argument("omega_c must be positive");
    using cd = std::complex<double>;
    const cd theta = std::sqrt(cd(omega_c * omega_c - 8.0 * alpha, 0.0));
    const cd x = 0.5 * theta * t;
    // (omega_c/Theta) sinh(Theta t/2) = omega_c (t/2) sinhc(x); series keeps
    // the critically damped point omega_c^2 = 8 alpha finite.
    cd sinhc;
    if (std::abs(x) < 1e-4)
        sinhc = 1.0 + x * x / 6.0 + x * x * x * x / 120.0;
    else
        sinhc = std::sinh(x) / x;
    const cd val =
        2.0 * std::exp(-0.5 * omega_c * t) * (std::cosh(x) + omega_c * (0.5 * t) * sinhc) - 1.0;
    if (!(std::abs(val.imag()) < 1e-12))
        throw std::runtime_error("closed form produced a non-real population difference");
    return val.real();
}

double relaxation_rate(const LorentzBath& bath, double lam, double omega0, double tol) {
    bath.validate();
    if (!(lam >= 0.0)) throw std::invalid_argument("lambda must be non-negative");
    if (!(omega0 > 0.0)) throw std::invalid_argument("omega0 must be positive");
    const double wc2 = bath.omega_c * bath.omega_c;
    double series = 0.0;
    for (const auto& w : poisson_weights(lam, tol)) {
        const double lw = static_cast<double>(w.l) * omega0;
        series += w.weight * (wc2 / (lw * lw + wc2));
    }
    return 2.0 * bath.alpha / bath.omega_c * series;
}

double dephasing_rate(const LorentzBath& bath, double lam, double omega0, double tol) {
    return 0.5 * relaxation_rate(bath, lam, omega0, tol);
}

PopulationTrace exp_approx_trace(double T1, const TimeGrid& grid) {
    if (!(T1 > 0.0)) throw std::invalid_argument("T1 must be positive");
    PopulationTrace trace;
    trace.solver_tag = SolverTag::exp_approx;
    trace.times = grid.times();
    trace.values.reserve(trace.times.size());
    for (double t : trace.times) trace.values.push_back(2.0 * std::exp(-t / T1) - 1.0);
    trace.params = {{"T1", T1}};
    return trace;
}

}  // namespace tlsdyn
