#include "tlsdyn/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "tlsdyn/csv_io.hpp"
#include "tlsdyn/parallel.hpp"
#include "tlsdyn/scenario.hpp"

namespace tlsdyn {

ScenarioConfig apply_knob(const ScenarioConfig& config, const std::string& knob, double value) {
    ScenarioConfig out = config;
    if (knob == "lambda") {
        auto* ho = std::get_if<HOMod>(&out.modulator);
        if (ho == nullptr)
            throw std::invalid_argument("knob requires single-mode modulator");
        if (!(value >= 0.0)) throw std::invalid_argument("lambda must be non-negative");
        ho->g0 = ho->omega0 * std::sqrt(value);
    } else if (knob == "Lambda") {
        auto* res = std::get_if<ReservoirMod>(&out.modulator);
        if (res == nullptr)
            throw std::invalid_argument("knob requires reservoir modulator");
        if (!(value >= 0.0)) throw std::invalid_argument("Lambda must be non-negative");
        res->chi = value * res->eta;
    } else if (knob == "alpha") {
        out.bath.alpha = value;
    } else {
        throw std::invalid_argument("unknown sweep knob: " + knob +
                                    " (expected lambda|Lambda|alpha)");
    }
    out.validate();
    return out;
}

RunRecord sweep(const ScenarioConfig& config, const std::string& knob,
                std::vector<double> values) {
    const auto t0 = std::chrono::steady_clock::now();
    config.validate();
    if (values.empty()) throw std::invalid_argument("empty sweep");
    std::sort(values.begin(), values.end());

    // fail fast on a knob/modulator mismatch before spawning workers
    apply_knob(config, knob, values.front());

    RunRecord record;
    record.version = kVersion;
    record.timestamp = current_timestamp_utc();
    record.config_json = resolved_config_json(config);
    std::string request = "sweep\n" + config_identity_json(config) + "\n" + knob;
    for (double v : values) request += "," + format_g17(v);
    record.run_id = make_run_id(request);

    std::vector<std::vector<TraceEntry>> per_value(values.size());
    std::vector<std::function<void()>> jobs;
    for (std::size_t i = 0; i < values.size(); ++i) {
        jobs.emplace_back([&, i] {
            const ScenarioConfig point = apply_knob(config, knob, values[i]);
            for (auto& trace : run_scenario(point))
                per_value[i].push_back(trace_entry(trace, knob, values[i]));
        });
    }
    run_jobs(jobs);

    for (auto& entries : per_value)
        for (auto& entry : entries) record.traces.push_back(std::move(entry));

    record.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_outputs(record, config.resolved_out_dir());
    return record;
}

}  // namespace tlsdyn
