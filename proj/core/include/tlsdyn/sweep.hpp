#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tlsdyn/config.hpp"
#include "tlsdyn/run_record.hpp"

namespace tlsdyn {

/// Runs the configured solvers once per knob value (lambda for the
/// single-mode modulator, Lambda for the reservoir, alpha for any) and writes
/// one CSV per trace plus a run record. Values are executed concurrently and
/// emitted sorted ascending. Errors: knob/modulator mismatch, empty value
/// list.
RunRecord sweep(const ScenarioConfig& config, const std::string& knob,
                std::vector<double> values);

/// The per-value config the sweep executes; exposed for tests.
ScenarioConfig apply_knob(const ScenarioConfig& config, const std::string& knob, double value);

}  // namespace tlsdyn
