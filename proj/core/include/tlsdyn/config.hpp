#pragma once

#include <string>

#include "tlsdyn/bath.hpp"
#include "tlsdyn/modulator.hpp"
#include "tlsdyn/time_grid.hpp"

namespace tlsdyn {

inline constexpr const char* kVersion = "0.1.0";

/// Name of the environment variable bounding sweep parallelism.
inline constexpr const char* kWorkersEnv = "TLSDYN_WORKERS";
/// Name of the environment variable holding the default output root.
inline constexpr const char* kOutputRootEnv = "TLSDYN_OUT";

enum class SolverChoice { laplace, volterra, closed_form, heom, all };

std::string to_string(SolverChoice choice);
SolverChoice solver_choice_from_string(const std::string& s);

struct HeomOptions {
    int fock_dim = 10;
    int ell_c = 8;
    double dt = 0.0;      ///< 0 selects the spectrum-based default
    double omega0 = 1.0;  ///< oscillator frequency when the modulator is none
    int ell_ceiling = 30;
    bool auto_converge = false;
};

/// One fully validated simulation request. Defaults are resolved at parse
/// time; resolved_config_json() spells out every field so a run is
/// reproducible from its record alone.
struct ScenarioConfig {
    LorentzBath bath{0.25, 7.5, 1.0};
    Modulator modulator = NoMod{};
    SolverChoice solver = SolverChoice::all;
    TimeGrid grid{0.0, 2.0, 401};
    double rho_ee0 = 1.0;
    double series_tol = 1e-12;
    HeomOptions heom;
    std::string out_dir;  ///< empty: resolved from TLSDYN_OUT, else "runs"

    void validate() const;
    std::string resolved_out_dir() const;
};

/// Strict parse: unknown keys are rejected at every level, all module-level
/// preconditions are checked before any solve. The single-mode modulator
/// accepts either g0 or lambda (g0 = omega0 sqrt(lambda)); the reservoir
/// accepts either chi or Lambda (chi = Lambda eta).
ScenarioConfig parse_config(const std::string& path);
ScenarioConfig parse_config_json(const std::string& text);

/// Canonical JSON of the config with every default made explicit.
std::string resolved_config_json(const ScenarioConfig& config);

/// resolved_config_json without the output location: two runs of the same
/// physics written to different directories share a run id.
std::string config_identity_json(const ScenarioConfig& config);

}  // namespace tlsdyn
