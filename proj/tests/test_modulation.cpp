#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tlsdyn/modulation.hpp"
#include "tlsdyn/time_domain.hpp"

using namespace tlsdyn;

namespace {

// quadrature oracle J0(x) = (1/pi) int_0^pi cos(x sin theta) d theta;
// the integrand extends to a smooth pi-periodic function, so the midpoint
// rule converges spectrally
double bessel_j0_quadrature(double x, int n = 10000) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double theta = (i + 0.5) * std::numbers::pi / n;
        sum += std::cos(x * std::sin(theta));
    }
    return sum / n;
}

constexpr double kJ0FirstZero = 2.404825557695773;

}  // namespace

TEST_SUITE("modulation") {

TEST_CASE("bessel_j0 against the quadrature oracle on [0, 30]") {
    CHECK(bessel_j0(0.0) == 1.0);
    for (int i = 0; i <= 600; ++i) {
        const double x = 30.0 * i / 600.0;
        CHECK(std::abs(bessel_j0(x) - bessel_j0_quadrature(x)) < 1e-8);
    }
    CHECK(std::abs(bessel_j0(2.404826)) < 1e-5);
    CHECK(std::abs(bessel_j0(kJ0FirstZero)) < 1e-12);
    for (double x : {0.3, 1.7, 5.5, 11.0, 26.0}) {
        CHECK(bessel_j0(-x) == bessel_j0(x));
        CHECK(std::abs(bessel_j0(x)) <= 1.0);
    }
}

TEST_CASE("effective alpha: identity at A = 0, zero at the Bessel zero, bounded") {
    CHECK(effective_alpha(DriveMod{0.0, 5.0}, 0.25) == 0.25);
    CHECK(effective_alpha(DriveMod{kJ0FirstZero * 5.0, 5.0}, 0.25) < 1e-20);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.01, 20.0);
    for (int i = 0; i < 200; ++i) {
        const double alpha = u(rng) / 10.0;
        const double eff = effective_alpha(DriveMod{u(rng), u(rng)}, alpha);
        CHECK(eff >= 0.0);
        CHECK(eff <= alpha);
    }
}

TEST_CASE("reservoir spectral density") {
    const ReservoirMod spec{3.0, 3.0};
    CHECK(reservoir_spectral_density(spec, 0.0) == 0.0);
    CHECK(reservoir_spectral_density(spec, 3.0) ==
          doctest::Approx(3.0 / (2.0 * std::numbers::pi)).epsilon(1e-14));
    // chi/pi asymptote
    const double at_inf = reservoir_spectral_density(spec, 1e6 * spec.eta);
    CHECK(std::abs(at_inf - spec.chi / std::numbers::pi) <
          1e-6 * (spec.chi / std::numbers::pi));
}

TEST_CASE("modulation function: limits and series identity") {
    CHECK(modulation_G(0.0, 2.0, 3.0) == std::complex<double>(1.0, 0.0));
    const double Lam = 1.7, eta = 3.0;
    CHECK(std::abs(modulation_G(100.0 / eta, Lam, eta).real() - std::exp(-Lam)) < 1e-10);

    // closed form vs 60-term Poisson series
    for (double t : {0.1, 0.5, 2.0}) {
        double series = 0.0;
        for (int l = 0; l <= 60; ++l)
            series += std::exp(-1.0 + l * std::log(1.0) - std::lgamma(l + 1.0)) *
                      std::exp(-l * eta * t);
        CHECK(std::abs(modulation_G(t, 1.0, eta).real() - series) < 1e-12);
    }

    double prev = 1.0;
    for (int i = 1; i <= 50; ++i) {
        const double g = modulation_G(0.1 * i, Lam, eta).real();
        CHECK(g < prev);
        prev = g;
    }
}

TEST_CASE("driven trace equals the bare pipeline at the renormalized coupling") {
    const LorentzBath bath{0.25, 7.5, 1.0};
    const TimeGrid grid{0.0, 2.0, 101};
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(0.1, 12.0);
    for (int i = 0; i < 5; ++i) {
        const DriveMod drive{u(rng), u(rng)};
        const auto driven = driven_trace(bath, drive, 1.0, grid);
        LorentzBath renorm = bath;
        renorm.alpha = effective_alpha(drive, bath.alpha);
        const auto bare = population_trace_laplace(kernel_bare(renorm), 1.0, grid);
        REQUIRE(driven.values.size() == bare.values.size());
        for (std::size_t k = 0; k < bare.values.size(); ++k)
            CHECK(driven.values[k] == bare.values[k]);  // bit identical by construction
    }
}

TEST_CASE("reservoir Lambda = 0 trace coincides with the bare trace") {
    const LorentzBath bath{0.2, 5.0, 1.0};
    const TimeGrid grid{0.0, 2.0, 101};
    const auto reservoir =
        population_trace_laplace(kernel_multimode(bath, 0.0, 3.0, 1e-12), 1.0, grid);
    const auto bare = population_trace_laplace(kernel_bare(bath), 1.0, grid);
    for (std::size_t i = 0; i < grid.n_points; ++i)
        CHECK(std::abs(reservoir.values[i] - bare.values[i]) < 1e-6);
}

TEST_CASE("reservoir ordering in Lambda (pointwise)") {
    const LorentzBath bath{0.2, 5.0, 1.0};
    const TimeGrid grid{0.0, 2.0, 81};
    std::vector<std::vector<double>> traces;
    for (double Lam : {0.0, 0.1, 1.0, 2.0, 3.0})
        traces.push_back(
            population_trace_laplace(kernel_multimode(bath, Lam, 3.0, 1e-12), 1.0, grid)
                .values);
    for (std::size_t k = 1; k < traces.size(); ++k)
        for (std::size_t i = 0; i < traces[k].size(); ++i)
            CHECK(traces[k][i] >= traces[k - 1][i] - 1e-3);
}

}  // TEST_SUITE
