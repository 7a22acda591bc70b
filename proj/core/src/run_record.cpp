#include "tlsdyn/run_record.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "tlsdyn/config.hpp"
#include "tlsdyn/csv_io.hpp"

namespace tlsdyn {

using nlohmann::json;

TraceEntry trace_entry(const PopulationTrace& trace, const std::string& knob, double value) {
    TraceEntry entry;
    entry.solver = to_string(trace.solver_tag);
    entry.knob = knob;
    entry.value = value;
    entry.xs = trace.times;
    entry.ys = trace.values;
    entry.params = trace.params;
    return entry;
}

std::string make_run_id(const std::string& request_description) {
    // FNV-1a, 64 bit
    std::uint64_t hash = 1469598103934665603ull;
    auto mix = [&hash](const std::string& s) {
        for (unsigned char c : s) {
            hash ^= c;
            hash *= 1099511628211ull;
        }
    };
    mix(kVersion);
    mix("\n");
    mix(request_description);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string current_timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace {

json to_json(const TraceEntry& entry) {
    return {{"solver", entry.solver}, {"knob", entry.knob},     {"value", entry.value},
            {"header", entry.header}, {"xs", entry.xs},         {"ys", entry.ys},
            {"params", entry.params}, {"file", entry.file}};
}

TraceEntry entry_from_json(const json& node) {
    TraceEntry entry;
    entry.solver = node.at("solver").get<std::string>();
    entry.knob = node.at("knob").get<std::string>();
    entry.value = node.at("value").get<double>();
    entry.header = node.at("header").get<std::string>();
    entry.xs = node.at("xs").get<std::vector<double>>();
    entry.ys = node.at("ys").get<std::vector<double>>();
    entry.params = node.at("params").get<std::map<std::string, double>>();
    entry.file = node.at("file").get<std::string>();
    return entry;
}

}  // namespace

std::string serialize(const RunRecord& record) {
    json root;
    root["run_id"] = record.run_id;
    root["timestamp"] = record.timestamp;
    root["version"] = record.version;
    root["config"] = json::parse(record.config_json);
    root["traces"] = json::array();
    for (const auto& entry : record.traces) root["traces"].push_back(to_json(entry));
    root["diagnostics"] = json::parse(record.diagnostics_json);
    root["duration_seconds"] = record.duration_seconds;
    return root.dump(2);
}

RunRecord parse_run_record(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("run record parse error: ") + e.what());
    }
    RunRecord record;
    record.run_id = root.at("run_id").get<std::string>();
    record.timestamp = root.at("timestamp").get<std::string>();
    record.version = root.at("version").get<std::string>();
    record.config_json = root.at("config").dump(2);
    for (const auto& node : root.at("traces")) record.traces.push_back(entry_from_json(node));
    record.diagnostics_json = root.at("diagnostics").dump(2);
    record.duration_seconds = root.at("duration_seconds").get<double>();
    return record;
}

namespace {

std::string format_knob_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

std::vector<std::filesystem::path> write_outputs(RunRecord& record,
                                                 const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    try {
        for (auto& entry : record.traces) {
            entry.file = record.run_id + "_" + entry.solver + "_" + entry.knob + "=" +
                         format_knob_value(entry.value) + ".csv";
            const auto path = out_dir / entry.file;
            write_xy_csv(path, entry.header, entry.xs, entry.ys);
            written.push_back(path);
        }
        const auto record_path = out_dir / (record.run_id + "_record.json");
        std::ofstream out(record_path);
        if (!out) throw std::runtime_error("cannot open for writing: " + record_path.string());
        out << serialize(record) << '\n';
        if (!out) throw std::runtime_error("write failed: " + record_path.string());
        written.push_back(record_path);
    } catch (...) {
        // abort the run cleanly: no partial output set left behind
        for (const auto& path : written) {
            std::error_code ec;
            std::filesystem::remove(path, ec);
        }
        throw;
    }
    return written;
}

}  // namespace tlsdyn
