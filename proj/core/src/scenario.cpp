#include "tlsdyn/scenario.hpp"

#include <chrono>
#include <stdexcept>

#include "tlsdyn/modulation.hpp"

namespace tlsdyn {

LaplaceKernel laplace_kernel_for(const ScenarioConfig& config) {
    config.validate();
    struct Visitor {
        const ScenarioConfig& cfg;
        LaplaceKernel operator()(const NoMod&) const { return kernel_bare(cfg.bath); }
        LaplaceKernel operator()(const HOMod& mod) const {
            return kernel_single_mode(cfg.bath, mod.lambda(), mod.omega0, cfg.series_tol);
        }
        LaplaceKernel operator()(const ReservoirMod& mod) const {
            return kernel_multimode(cfg.bath, mod.Lambda(), mod.eta, cfg.series_tol);
        }
        LaplaceKernel operator()(const DriveMod& mod) const {
            LorentzBath bath = cfg.bath;
            bath.alpha = effective_alpha(mod, cfg.bath.alpha);
            return kernel_bare(bath);
        }
    };
    return std::visit(Visitor{config}, config.modulator);
}

ExpSumKernel exp_sum_kernel_for(const ScenarioConfig& config) {
    config.validate();
    struct Visitor {
        const ScenarioConfig& cfg;
        ExpSumKernel operator()(const NoMod&) const { return exp_sum_kernel_bare(cfg.bath); }
        ExpSumKernel operator()(const HOMod& mod) const {
            return exp_sum_kernel_single_mode(cfg.bath, mod.lambda(), mod.omega0,
                                              cfg.series_tol);
        }
        ExpSumKernel operator()(const ReservoirMod& mod) const {
            return exp_sum_kernel_multimode(cfg.bath, mod.Lambda(), mod.eta, cfg.series_tol);
        }
        ExpSumKernel operator()(const DriveMod& mod) const {
            LorentzBath bath = cfg.bath;
            bath.alpha = effective_alpha(mod, cfg.bath.alpha);
            return exp_sum_kernel_bare(bath);
        }
    };
    return std::visit(Visitor{config}, config.modulator);
}

HeomConfig heom_config_for(const ScenarioConfig& config) {
    config.validate();
    HeomConfig heom;
    heom.epsilon = config.bath.epsilon;
    heom.alpha = config.bath.alpha;
    heom.omega_c = config.bath.omega_c;
    heom.fock_dim = config.heom.fock_dim;
    heom.ell_c = config.heom.ell_c;
    heom.dt = config.heom.dt;
    if (const auto* ho = std::get_if<HOMod>(&config.modulator)) {
        heom.omega0 = ho->omega0;
        heom.g0 = ho->g0;
    } else if (std::holds_alternative<NoMod>(config.modulator)) {
        heom.omega0 = config.heom.omega0;
        heom.g0 = 0.0;
    } else {
        throw std::invalid_argument(
            "heom solver requires the none or single-mode (ho) modulator");
    }
    return heom;
}

bool closed_form_applicable(const ScenarioConfig& config) {
    struct Visitor {
        bool operator()(const NoMod&) const { return true; }
        bool operator()(const HOMod& mod) const { return mod.g0 == 0.0; }
        bool operator()(const ReservoirMod& mod) const { return mod.chi == 0.0; }
        bool operator()(const DriveMod&) const { return true; }
    };
    return std::visit(Visitor{}, config.modulator);
}

std::string natural_knob(const ScenarioConfig& config) {
    if (std::holds_alternative<HOMod>(config.modulator)) return "lambda";
    if (std::holds_alternative<ReservoirMod>(config.modulator)) return "Lambda";
    return "alpha";
}

double natural_knob_value(const ScenarioConfig& config) {
    if (const auto* ho = std::get_if<HOMod>(&config.modulator)) return ho->lambda();
    if (const auto* res = std::get_if<ReservoirMod>(&config.modulator)) return res->Lambda();
    if (const auto* drive = std::get_if<DriveMod>(&config.modulator))
        return effective_alpha(*drive, config.bath.alpha);
    return config.bath.alpha;
}

namespace {

PopulationTrace closed_form_trace(const ScenarioConfig& config) {
    double alpha = config.bath.alpha;
    if (const auto* drive = std::get_if<DriveMod>(&config.modulator))
        alpha = effective_alpha(*drive, config.bath.alpha);
    PopulationTrace trace;
    trace.solver_tag = SolverTag::closed_form;
    trace.times = config.grid.times();
    trace.values.reserve(trace.times.size());
    // rho_ee0 < 1 scales the decaying part: P = 2 rho_ee0 f(t) - 1 with f the
    // excited-state survival amplitude squared of the bare model
    for (double t : trace.times) {
        const double f = 0.5 * (closed_form_P_lambda0(t, alpha, config.bath.omega_c) + 1.0);
        trace.values.push_back(2.0 * config.rho_ee0 * f - 1.0);
    }
    trace.params = {{"alpha", alpha},
                    {"omega_c", config.bath.omega_c},
                    {"rho_ee0", config.rho_ee0}};
    return trace;
}

}  // namespace

std::vector<PopulationTrace> run_scenario(const ScenarioConfig& config) {
    config.validate();
    const bool all = config.solver == SolverChoice::all;
    std::vector<PopulationTrace> traces;

    const bool is_reservoir = std::holds_alternative<ReservoirMod>(config.modulator);
    const bool is_drive = std::holds_alternative<DriveMod>(config.modulator);

    if (all || config.solver == SolverChoice::laplace) {
        if (is_drive) {
            traces.push_back(driven_trace(config.bath, std::get<DriveMod>(config.modulator),
                                          config.rho_ee0, config.grid));
        } else {
            traces.push_back(
                population_trace_laplace(laplace_kernel_for(config), config.rho_ee0, config.grid));
        }
    }
    if (all || config.solver == SolverChoice::volterra)
        traces.push_back(volterra_solve(exp_sum_kernel_for(config), config.rho_ee0, config.grid));
    if (config.solver == SolverChoice::closed_form ||
        (all && closed_form_applicable(config))) {
        if (!closed_form_applicable(config))
            throw std::invalid_argument(
                "closed_form solver requires an unmodulated (bare or driven) configuration");
        traces.push_back(closed_form_trace(config));
    }
    if (config.solver == SolverChoice::heom || (all && !is_reservoir && !is_drive)) {
        const HeomConfig heom = heom_config_for(config);
        // excited population rho_ee0 on the vacuum oscillator
        Eigen::MatrixXcd rho0 = Eigen::MatrixXcd::Zero(heom.dim(), heom.dim());
        rho0(0, 0) = config.rho_ee0;
        rho0(heom.fock_dim, heom.fock_dim) = 1.0 - config.rho_ee0;
        if (config.heom.auto_converge) {
            ConvergedRun run =
                heom_evolve_converged(heom, rho0, config.grid, config.heom.ell_ceiling);
            traces.push_back(std::move(run.result.trace));
        } else {
            HeomResult result = heom_evolve(heom, rho0, config.grid);
            traces.push_back(std::move(result.trace));
        }
    }
    return traces;
}

RunRecord simulate_to_outputs(const ScenarioConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    RunRecord record;
    record.version = kVersion;
    record.timestamp = current_timestamp_utc();
    record.config_json = resolved_config_json(config);
    record.run_id = make_run_id("simulate\n" + config_identity_json(config));

    const std::string knob = natural_knob(config);
    const double value = natural_knob_value(config);
    for (auto& trace : run_scenario(config))
        record.traces.push_back(trace_entry(trace, knob, value));

    record.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_outputs(record, config.resolved_out_dir());
    return record;
}

}  // namespace tlsdyn
