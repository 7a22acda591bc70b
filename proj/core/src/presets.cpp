#include "tlsdyn/presets.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include <json.hpp>

#include "tlsdyn/config.hpp"
#include "tlsdyn/heom.hpp"
#include "tlsdyn/laplace.hpp"
#include "tlsdyn/parallel.hpp"
#include "tlsdyn/time_domain.hpp"

namespace tlsdyn {

namespace {

using nlohmann::json;

constexpr double kSeriesTol = 1e-12;

std::string preset_description(const std::string& name, const PresetOptions& options) {
    json desc;
    desc["preset"] = name;
    if (options.grid)
        desc["grid"] = {{"t_start", options.grid->t_start},
                        {"t_end", options.grid->t_end},
                        {"n_points", options.grid->n_points}};
    if (options.fock_dim) desc["fock_dim"] = *options.fock_dim;
    if (options.ell_c) desc["ell_c"] = *options.ell_c;
    if (options.dt) desc["dt"] = *options.dt;
    if (options.omega0) desc["omega0"] = *options.omega0;
    desc["auto_converge"] = options.auto_converge;
    return desc.dump();
}

RunRecord make_record(const std::string& name, const PresetOptions& options,
                      const json& resolved) {
    RunRecord record;
    record.version = kVersion;
    record.timestamp = current_timestamp_utc();
    record.config_json = resolved.dump(2);
    record.run_id = make_run_id("preset\n" + preset_description(name, options));
    return record;
}

RunRecord preset_fig1(const PresetOptions& options) {
    const LorentzBath bath{0.25, 7.5, 1.0};
    const double omega0 = 5.0;
    const std::vector<double> lambdas{0.0, 0.1, 1.0, 2.0, 3.0};
    const TimeGrid grid = options.grid.value_or(TimeGrid{0.0, 2.0, 401});

    json resolved = {{"preset", "fig1"},
                     {"alpha", bath.alpha},
                     {"omega_c", bath.omega_c},
                     {"epsilon", bath.epsilon},
                     {"omega0", omega0},
                     {"lambda_values", lambdas},
                     {"rho_ee0", 1.0},
                     {"series_tol", kSeriesTol},
                     {"grid", {{"t_start", grid.t_start}, {"t_end", grid.t_end},
                               {"n_points", grid.n_points}}}};
    RunRecord record = make_record("fig1", options, resolved);

    std::vector<TraceEntry> laplace_entries(lambdas.size());
    std::vector<TraceEntry> approx_entries(lambdas.size());
    std::vector<std::function<void()>> jobs;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        jobs.emplace_back([&, i] {
            const double lam = lambdas[i];
            const auto kernel = kernel_single_mode(bath, lam, omega0, kSeriesTol);
            laplace_entries[i] = trace_entry(population_trace_laplace(kernel, 1.0, grid),
                                             "lambda", lam);
            const double t1 = 1.0 / relaxation_rate(bath, lam, omega0, kSeriesTol);
            approx_entries[i] = trace_entry(exp_approx_trace(t1, grid), "lambda", lam);
        });
    }
    run_jobs(jobs, options.workers);
    for (auto& e : laplace_entries) record.traces.push_back(std::move(e));
    for (auto& e : approx_entries) record.traces.push_back(std::move(e));
    return record;
}

RunRecord preset_fig2(const PresetOptions& options) {
    const double omega_c = 7.5;
    const double omega0 = 5.0;
    const double epsilon = 1.0;
    const std::vector<double> alphas{0.1, 0.2, 0.3};
    const std::size_t n_lambda = 121;
    const double lambda_max = 3.0;

    json resolved = {{"preset", "fig2"},  {"omega_c", omega_c},
                     {"epsilon", epsilon}, {"omega0", omega0},
                     {"alpha_values", alphas},
                     {"lambda_grid", {{"min", 0.0}, {"max", lambda_max}, {"n_points", n_lambda}}},
                     {"series_tol", kSeriesTol}};
    RunRecord record = make_record("fig2", options, resolved);

    std::vector<double> lambdas(n_lambda);
    for (std::size_t i = 0; i < n_lambda; ++i)
        lambdas[i] = lambda_max * static_cast<double>(i) / static_cast<double>(n_lambda - 1);

    for (double alpha : alphas) {
        const LorentzBath bath{alpha, omega_c, epsilon};
        TraceEntry entry;
        entry.solver = "t1";
        entry.knob = "alpha";
        entry.value = alpha;
        entry.header = "lambda,T1";
        entry.xs = lambdas;
        entry.ys.reserve(n_lambda);
        for (double lam : lambdas)
            entry.ys.push_back(1.0 / relaxation_rate(bath, lam, omega0, kSeriesTol));
        entry.params = {{"alpha", alpha}, {"omega_c", omega_c}, {"omega0", omega0}};
        record.traces.push_back(std::move(entry));
    }
    return record;
}

RunRecord preset_fig3(const PresetOptions& options) {
    const LorentzBath bath{0.2, 5.0, 1.0};
    const double eta = 3.0;
    const std::vector<double> Lambdas{0.0, 0.1, 1.0, 2.0, 3.0};
    const TimeGrid grid = options.grid.value_or(TimeGrid{0.0, 2.0, 401});

    json resolved = {{"preset", "fig3"},
                     {"alpha", bath.alpha},
                     {"omega_c", bath.omega_c},
                     {"epsilon", bath.epsilon},
                     {"eta", eta},
                     {"Lambda_values", Lambdas},
                     {"rho_ee0", 1.0},
                     {"series_tol", kSeriesTol},
                     {"grid", {{"t_start", grid.t_start}, {"t_end", grid.t_end},
                               {"n_points", grid.n_points}}}};
    RunRecord record = make_record("fig3", options, resolved);

    std::vector<TraceEntry> entries(Lambdas.size());
    std::vector<std::function<void()>> jobs;
    for (std::size_t i = 0; i < Lambdas.size(); ++i) {
        jobs.emplace_back([&, i] {
            const auto kernel = kernel_multimode(bath, Lambdas[i], eta, kSeriesTol);
            entries[i] =
                trace_entry(population_trace_laplace(kernel, 1.0, grid), "Lambda", Lambdas[i]);
        });
    }
    run_jobs(jobs, options.workers);
    for (auto& e : entries) record.traces.push_back(std::move(e));
    return record;
}

RunRecord preset_fig4(const PresetOptions& options) {
    const double alpha = 0.01;
    const double epsilon = 1.5;
    const double omega_c = 0.2;
    const double omega0 = options.omega0.value_or(1.0);
    const std::vector<double> lambdas{0.0, 0.1, 0.2, 0.3};
    const TimeGrid grid = options.grid.value_or(TimeGrid{0.0, 50.0, 501});
    const int fock_dim = options.fock_dim.value_or(10);
    const int ell_c = options.ell_c.value_or(8);

    json resolved = {{"preset", "fig4"},
                     {"alpha", alpha},
                     {"omega_c", omega_c},
                     {"epsilon", epsilon},
                     {"omega0", omega0},
                     {"lambda_values", lambdas},
                     {"rho_ee0", 1.0},
                     {"fock_dim", fock_dim},
                     {"ell_c", ell_c},
                     {"dt", options.dt.value_or(0.0)},
                     {"auto_converge", options.auto_converge},
                     {"grid", {{"t_start", grid.t_start}, {"t_end", grid.t_end},
                               {"n_points", grid.n_points}}}};
    RunRecord record = make_record("fig4", options, resolved);

    struct Fig4Curve {
        TraceEntry entry;
        json diag;
    };
    std::vector<Fig4Curve> curves(lambdas.size());
    std::vector<std::function<void()>> jobs;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        jobs.emplace_back([&, i] {
            const double lam = lambdas[i];
            HeomConfig config;
            config.epsilon = epsilon;
            config.omega0 = omega0;
            config.g0 = omega0 * std::sqrt(lam);
            config.alpha = alpha;
            config.omega_c = omega_c;
            config.fock_dim = fock_dim;
            config.ell_c = ell_c;
            config.dt = options.dt.value_or(0.0);
            const auto rho0 = excited_vacuum_state(config);
            if (options.auto_converge) {
                ConvergedRun run = heom_evolve_converged(config, rho0, grid);
                curves[i].entry = trace_entry(run.result.trace, "lambda", lam);
                curves[i].diag = {{"ell_c_used", run.ell_c_used},
                                  {"delta_depth", run.report.delta_depth},
                                  {"delta_fock", run.report.delta_fock},
                                  {"converged", run.report.converged},
                                  {"max_trace_drift", run.result.max_trace_drift},
                                  {"max_adjoint_residual", run.result.max_adjoint_residual}};
            } else {
                HeomResult result = heom_evolve(config, rho0, grid);
                curves[i].entry = trace_entry(result.trace, "lambda", lam);
                curves[i].diag = {{"ell_c_used", config.ell_c},
                                  {"max_trace_drift", result.max_trace_drift},
                                  {"max_adjoint_residual", result.max_adjoint_residual}};
            }
        });
    }
    run_jobs(jobs, options.workers);

    json diagnostics;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        record.traces.push_back(std::move(curves[i].entry));
        char key[48];
        std::snprintf(key, sizeof key, "lambda=%.12g", lambdas[i]);
        diagnostics[key] = curves[i].diag;
    }
    record.diagnostics_json = diagnostics.dump(2);
    return record;
}

}  // namespace

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3", "fig4"}; }

RunRecord run_preset(const std::string& name, const std::filesystem::path& out_dir,
                     const PresetOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();
    RunRecord record;
    if (name == "fig1")
        record = preset_fig1(options);
    else if (name == "fig2")
        record = preset_fig2(options);
    else if (name == "fig3")
        record = preset_fig3(options);
    else if (name == "fig4")
        record = preset_fig4(options);
    else
        throw std::invalid_argument("unknown preset: " + name +
                                    " (expected fig1|fig2|fig3|fig4)");
    record.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_outputs(record, out_dir);
    return record;
}

}  // namespace tlsdyn
