#pragma once

#include <string>
#include <vector>

#include "tlsdyn/config.hpp"
#include "tlsdyn/heom.hpp"
#include "tlsdyn/laplace.hpp"
#include "tlsdyn/run_record.hpp"
#include "tlsdyn/time_domain.hpp"

namespace tlsdyn {

/// Laplace kernel matching the configured modulator (the drive is mapped to
/// the bare kernel at the renormalized coupling).
LaplaceKernel laplace_kernel_for(const ScenarioConfig& config);

/// Exponential-sum kernel matching the configured modulator.
ExpSumKernel exp_sum_kernel_for(const ScenarioConfig& config);

/// HEOM configuration for the none/single-mode modulators; throws for
/// reservoir and drive configurations.
HeomConfig heom_config_for(const ScenarioConfig& config);

/// True when the bare closed form applies (no effective modulation).
bool closed_form_applicable(const ScenarioConfig& config);

/// The natural sweep knob of the configured modulator, used to name output
/// files of single runs: lambda (ho), Lambda (reservoir), alpha otherwise.
std::string natural_knob(const ScenarioConfig& config);
double natural_knob_value(const ScenarioConfig& config);

/// Runs every solver selected by config.solver that applies to the configured
/// modulator ("all" skips inapplicable ones; naming one that does not apply is
/// an error).
std::vector<PopulationTrace> run_scenario(const ScenarioConfig& config);

/// run_scenario + RunRecord assembly + write_outputs into the resolved output
/// directory.
RunRecord simulate_to_outputs(const ScenarioConfig& config);

}  // namespace tlsdyn
