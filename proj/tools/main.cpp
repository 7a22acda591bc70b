#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tlsdyn/config.hpp"
#include "tlsdyn/csv_io.hpp"
#include "tlsdyn/presets.hpp"
#include "tlsdyn/scenario.hpp"
#include "tlsdyn/sweep.hpp"
#include "tlsdyn/time_domain.hpp"

namespace {

void print_record_summary(const tlsdyn::RunRecord& record, const std::string& out_dir) {
    std::cout << "run " << record.run_id << " (" << record.traces.size() << " curves, "
              << record.duration_seconds << " s) -> " << out_dir << "\n";
    for (const auto& entry : record.traces) std::cout << "  " << entry.file << "\n";
}

std::vector<double> parse_value_list(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        const double v = std::stod(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("bad value in list: " + item);
        values.push_back(v);
    }
    return values;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dissipative two-level system dynamics under ancilla, drive and reservoir "
                 "modulation"};
    app.require_subcommand(1);

    std::string config_path;
    auto* simulate = app.add_subcommand("simulate", "run the solvers selected by a config file");
    simulate->add_option("--config", config_path, "path to a JSON config")->required();

    std::string preset_name;
    std::string preset_out;
    auto* preset = app.add_subcommand("preset", "run a built-in figure preset (fig1..fig4)");
    preset->add_option("name", preset_name, "fig1|fig2|fig3|fig4")->required();
    preset->add_option("--out", preset_out, "output directory")->required();

    double t1_alpha = 0.0, t1_omega_c = 0.0, t1_epsilon = 1.0, t1_omega0 = 0.0, t1_lambda = 0.0;
    double t1_tol = 1e-12;
    auto* t1 = app.add_subcommand("t1", "print the relaxation and dephasing times");
    t1->add_option("--alpha", t1_alpha, "bath coupling constant")->required();
    t1->add_option("--omega-c", t1_omega_c, "bath cutoff frequency")->required();
    t1->add_option("--epsilon", t1_epsilon, "TLS transition frequency");
    t1->add_option("--omega0", t1_omega0, "oscillator frequency")->required();
    t1->add_option("--lambda", t1_lambda, "steerable parameter (g0/omega0)^2")->required();
    t1->add_option("--tol", t1_tol, "Poisson truncation tolerance");

    std::string sweep_config, sweep_knob, sweep_values;
    auto* sweep_cmd = app.add_subcommand("sweep", "run one trace per knob value");
    sweep_cmd->add_option("--config", sweep_config, "path to a JSON config")->required();
    sweep_cmd->add_option("--knob", sweep_knob, "lambda|Lambda|alpha")->required();
    sweep_cmd->add_option("--values", sweep_values, "comma-separated value list")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) {
            const auto config = tlsdyn::parse_config(config_path);
            const auto record = tlsdyn::simulate_to_outputs(config);
            print_record_summary(record, config.resolved_out_dir());
        } else if (*preset) {
            const auto record = tlsdyn::run_preset(preset_name, preset_out);
            print_record_summary(record, preset_out);
        } else if (*t1) {
            const tlsdyn::LorentzBath bath{t1_alpha, t1_omega_c, t1_epsilon};
            const double rate = tlsdyn::relaxation_rate(bath, t1_lambda, t1_omega0, t1_tol);
            std::cout << "T1 = " << tlsdyn::format_g17(1.0 / rate) << "\n";
            std::cout << "T2 = " << tlsdyn::format_g17(
                             1.0 / tlsdyn::dephasing_rate(bath, t1_lambda, t1_omega0, t1_tol))
                      << "\n";
        } else if (*sweep_cmd) {
            const auto config = tlsdyn::parse_config(sweep_config);
            const auto record = tlsdyn::sweep(config, sweep_knob, parse_value_list(sweep_values));
            print_record_summary(record, config.resolved_out_dir());
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
