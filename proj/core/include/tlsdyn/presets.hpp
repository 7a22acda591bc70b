#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tlsdyn/run_record.hpp"
#include "tlsdyn/time_grid.hpp"

namespace tlsdyn {

/// Knobs the preset runner exposes mainly so tests can shrink the expensive
/// hierarchy runs; the CLI always uses the defaults, which are recorded in
/// the run metadata.
struct PresetOptions {
    std::optional<TimeGrid> grid;
    std::optional<int> fock_dim;
    std::optional<int> ell_c;
    std::optional<double> dt;
    std::optional<double> omega0;    ///< oscillator frequency used by fig4
    bool auto_converge = true;       ///< fig4: raise ell_c until converged
    std::size_t workers = 0;         ///< 0: TLSDYN_WORKERS / machine parallelism
};

/// Executes one of the four figure presets and writes one CSV per curve plus
/// a run record into `out_dir`:
///   fig1: P(t) for lambda in {0, 0.1, 1, 2, 3} plus exp-approx overlays,
///         alpha = 0.25, omega0 = 5, omega_c = 7.5, t in [0, 2].
///   fig2: T1(lambda) on [0, 3] (121 points) for alpha in {0.1, 0.2, 0.3},
///         omega0 = 5, omega_c = 7.5.
///   fig3: reservoir P(t) for Lambda in {0, 0.1, 1, 2, 3}, alpha = 0.2,
///         eta = 3, omega_c = 5, t in [0, 2].
///   fig4: hierarchy P(t) for lambda in {0, 0.1, 0.2, 0.3}, alpha = 0.01,
///         epsilon = 1.5, omega_c = 0.2, t in [0, 50], N_a = 10, ell_c = 8
///         raised until the convergence check passes.
/// Unknown names are rejected; solver errors abort the run with partial
/// outputs removed.
RunRecord run_preset(const std::string& name, const std::filesystem::path& out_dir,
                     const PresetOptions& options = {});

std::vector<std::string> preset_names();

}  // namespace tlsdyn
