#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "tlsdyn/laplace.hpp"
#include "tlsdyn/time_domain.hpp"

using namespace tlsdyn;
using cd = std::complex<double>;

namespace {

// direct series summation of the single-mode kernel, independent of the
// Poisson recursion (lgamma-based weights, fixed 60 terms)
cd single_mode_direct(double alpha, double omega_c, double lam, double omega0, cd z) {
    cd sum = 0.0;
    for (int l = 0; l <= 60; ++l) {
        const double w =
            lam == 0.0 ? (l == 0 ? 1.0 : 0.0)
                       : std::exp(-lam + l * std::log(lam) - std::lgamma(l + 1.0));
        const cd zc = z + omega_c;
        sum += w * zc / (zc * zc + cd(l * omega0) * cd(l * omega0));
    }
    return 2.0 * alpha * sum;
}

cd multimode_direct(double alpha, double omega_c, double Lam, double eta, cd z) {
    cd sum = 0.0;
    for (int l = 0; l <= 60; ++l) {
        const double w =
            Lam == 0.0 ? (l == 0 ? 1.0 : 0.0)
                       : std::exp(-Lam + l * std::log(Lam) - std::lgamma(l + 1.0));
        sum += w / (z + omega_c + l * eta);
    }
    return 2.0 * alpha * sum;
}

}  // namespace

TEST_SUITE("laplace") {

TEST_CASE("zakian inverts the analytic transform pairs") {
    // F(z) = 1/(z+1)  ->  e^{-t}
    for (int i = 0; i < 20; ++i) {
        const double t = 0.25 + (5.0 - 0.25) * i / 19.0;
        const double got = zakian_invert([](cd z) { return 1.0 / (z + 1.0); }, t);
        CHECK(std::abs(got - std::exp(-t)) / std::exp(-t) < 1e-4);
    }
    // F(z) = 1/z  ->  1
    CHECK(std::abs(zakian_invert([](cd z) { return 1.0 / z; }, 5.0) - 1.0) < 1e-4);
    for (int i = 0; i < 20; ++i) {
        const double t = 0.25 + (5.0 - 0.25) * i / 19.0;
        CHECK(std::abs(zakian_invert([](cd z) { return 1.0 / z; }, t) - 1.0) < 1e-4);
    }
    // F(z) = 1/(z+a)^2  ->  t e^{-a t}, a = 0.5
    const double a = 0.5;
    for (double t : {0.5, 1.0, 2.0}) {
        const double got =
            zakian_invert([a](cd z) { return 1.0 / ((z + a) * (z + a)); }, t);
        const double want = t * std::exp(-a * t);
        CHECK(std::abs(got - want) / want < 1e-4);
    }
}

TEST_CASE("zakian rejects t <= 0") {
    CHECK_THROWS_WITH_AS(zakian_invert([](cd z) { return 1.0 / z; }, 0.0),
                         "inversion undefined at t <= 0", std::invalid_argument);
    CHECK_THROWS_AS(zakian_invert([](cd z) { return 1.0 / z; }, -1.0), std::invalid_argument);
}

TEST_CASE("zakian inversion is linear") {
    auto f = [](cd z) { return 1.0 / (z + 2.0); };
    const double t = 0.7;
    const double base = zakian_invert(f, t);
    // power-of-two scales commute with every intermediate rounding
    for (double c : {-2.0, 0.5}) {
        const double scaled = zakian_invert([&](cd z) { return c * f(z); }, t);
        CHECK(scaled == c * base);
    }
    // non-power-of-two scales re-round each term; the sum cancels terms of
    // magnitude ~1e5 down to ~0.25, so equality holds to eps * that scale
    const double tripled = zakian_invert([&](cd z) { return 3.0 * f(z); }, t);
    CHECK(std::abs(tripled - 3.0 * base) < 1e-10);
}

TEST_CASE("single-mode kernel reduces to the bare kernel at lambda = 0") {
    const LorentzBath bath{0.25, 7.5, 1.0};
    const auto kernel = kernel_single_mode(bath, 0.0, 5.0, 1e-12);
    for (cd z : {cd(1.0, 0.0), cd(0.3, 2.0), cd(10.0, -4.0)}) {
        const cd want = 2.0 * bath.alpha / (z + bath.omega_c);
        CHECK(std::abs(kernel(z) - want) <= 1e-15 * std::abs(want));
    }
}

TEST_CASE("single-mode kernel matches the direct series oracle") {
    const LorentzBath bath{0.25, 7.5, 1.0};
    const auto kernel = kernel_single_mode(bath, 1.0, 5.0, 1e-12);
    const cd z(1.0, 0.0);
    const cd want = single_mode_direct(0.25, 7.5, 1.0, 5.0, z);
    CHECK(std::abs(kernel(z) - want) < 1e-12 * std::abs(want));

    const auto k3 = kernel_single_mode(bath, 3.0, 5.0, 1e-12);
    for (cd zz : {cd(0.5, 1.0), cd(2.0, -3.0), cd(0.01, 0.0)}) {
        const cd w = single_mode_direct(0.25, 7.5, 3.0, 5.0, zz);
        CHECK(std::abs(k3(zz) - w) < 1e-11 * std::abs(w));
    }
}

TEST_CASE("kernels are real on the positive real axis and conjugate symmetric") {
    const LorentzBath bath{0.25, 7.5, 1.0};
    const auto kernel = kernel_single_mode(bath, 2.0, 5.0, 1e-12);
    for (double z : {0.1, 1.0, 20.0}) CHECK(kernel(cd(z, 0.0)).imag() == 0.0);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.05, 8.0);
    const auto mm = kernel_multimode(bath, 1.5, 3.0, 1e-12);
    for (int i = 0; i < 100; ++i) {
        const cd z(u(rng), u(rng));
        CHECK(std::abs(kernel(std::conj(z)) - std::conj(kernel(z))) < 1e-14);
        CHECK(std::abs(mm(std::conj(z)) - std::conj(mm(z))) < 1e-14);
        // resolvent conjugate symmetry keeps the inverted trace real
        const cd r1 = 1.0 / (std::conj(z) + kernel(std::conj(z)));
        const cd r2 = std::conj(1.0 / (z + kernel(z)));
        CHECK(std::abs(r1 - r2) < 1e-10);
    }
}

TEST_CASE("multimode kernel: degenerate Poisson and series oracle") {
    const LorentzBath bath{0.2, 5.0, 1.0};
    const auto bare = kernel_multimode(bath, 0.0, 3.0, 1e-12);
    for (cd z : {cd(0.0, 0.0), cd(1.0, 2.0)}) {
        const cd want = 2.0 * bath.alpha / (z + bath.omega_c);
        CHECK(std::abs(bare(z) - want) <= 1e-15 * std::abs(want));
    }

    const auto kernel = kernel_multimode(bath, 1.0, 3.0, 1e-12);
    const cd want = multimode_direct(0.2, 5.0, 1.0, 3.0, cd(0.0, 0.0));
    CHECK(std::abs(kernel(cd(0.0, 0.0)) - want) < 1e-12 * std::abs(want));

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.01, 10.0);
    for (int i = 0; i < 100; ++i) {
        const cd z(u(rng), u(rng) - 5.0);
        CHECK(kernel(z).real() > 0.0);  // Re z > 0 => all summands have Re > 0
    }
}

TEST_CASE("population trace: initial condition is exact") {
    const LorentzBath bath{0.25, 7.5, 1.0};
    const auto kernel = kernel_single_mode(bath, 2.0, 5.0, 1e-12);
    const auto trace = population_trace_laplace(kernel, 1.0, TimeGrid{0.0, 1.0, 11});
    CHECK(trace.values.front() == 1.0);
    const auto half = population_trace_laplace(kernel, 0.25, TimeGrid{0.0, 1.0, 11});
    CHECK(half.values.front() == -0.5);
    CHECK(trace.solver_tag == SolverTag::laplace);
    trace.check_valid();
}

TEST_CASE("population trace at lambda = 0 matches the closed form") {
    const LorentzBath bath{0.25, 7.5, 1.0};
    const auto kernel = kernel_single_mode(bath, 0.0, 5.0, 1e-12);
    const auto trace = population_trace_laplace(kernel, 1.0, TimeGrid{0.0, 2.0, 201});
    for (std::size_t i = 0; i < trace.times.size(); ++i)
        CHECK(std::abs(trace.values[i] - closed_form_P_lambda0(trace.times[i], 0.25, 7.5)) <
              1e-3);
}

TEST_CASE("decay slows monotonically with lambda (pointwise)") {
    const LorentzBath bath{0.25, 7.5, 1.0};
    const TimeGrid grid{0.0, 2.0, 81};
    std::vector<std::vector<double>> traces;
    for (double lam : {0.0, 0.1, 1.0, 2.0, 3.0}) {
        const auto kernel = kernel_single_mode(bath, lam, 5.0, 1e-12);
        traces.push_back(population_trace_laplace(kernel, 1.0, grid).values);
    }
    for (std::size_t k = 1; k < traces.size(); ++k)
        for (std::size_t i = 0; i < traces[k].size(); ++i)
            CHECK(traces[k][i] >= traces[k - 1][i] - 1e-3);
}

}  // TEST_SUITE
