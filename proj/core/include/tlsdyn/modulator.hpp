#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <variant>

namespace tlsdyn {

/// No ancillary degree of freedom: the bare dissipative TLS.
struct NoMod {};

/// Single-mode harmonic oscillator coupled to sigma_z.
/// The steerable parameter is lambda = (g0/omega0)^2.
struct HOMod {
    double g0;      ///< TLS-oscillator coupling (rad/time)
    double omega0;  ///< oscillator frequency (rad/time)

    double lambda() const { return (g0 / omega0) * (g0 / omega0); }

    void validate() const {
        if (!(omega0 > 0.0)) throw std::invalid_argument("omega0 must be positive");
        if (!(g0 >= 0.0)) throw std::invalid_argument("g0 must be non-negative");
    }
};

/// Ancillary multi-mode reservoir with super-Ohmic, Lorentz-cutoff spectral
/// density. The steerable parameter is Lambda = chi/eta.
struct ReservoirMod {
    double chi;  ///< reservoir coupling scale (rad/time)
    double eta;  ///< reservoir cutoff (rad/time)

    double Lambda() const { return chi / eta; }

    void validate() const {
        if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
        if (!(chi >= 0.0)) throw std::invalid_argument("chi must be non-negative");
    }
};

/// Periodic sigma_z drive; renormalizes the bath coupling by J0(A/Omega)^2.
struct DriveMod {
    double amplitude_A;      ///< drive amplitude (rad/time)
    double frequency_Omega;  ///< drive frequency (rad/time)

    void validate() const {
        if (!(frequency_Omega > 0.0)) throw std::invalid_argument("frequency_Omega must be positive");
        if (!(amplitude_A >= 0.0)) throw std::invalid_argument("amplitude_A must be non-negative");
    }
};

using Modulator = std::variant<NoMod, HOMod, ReservoirMod, DriveMod>;

inline void validate(const Modulator& mod) {
    std::visit([](const auto& m) {
        if constexpr (!std::is_same_v<std::decay_t<decltype(m)>, NoMod>) m.validate();
    }, mod);
}

inline std::string family_name(const Modulator& mod) {
    struct Visitor {
        std::string operator()(const NoMod&) const { return "none"; }
        std::string operator()(const HOMod&) const { return "ho"; }
        std::string operator()(const ReservoirMod&) const { return "reservoir"; }
        std::string operator()(const DriveMod&) const { return "drive"; }
    };
    return std::visit(Visitor{}, mod);
}

}  // namespace tlsdyn
