#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tlsdyn/trace.hpp"

namespace tlsdyn {

/// One persisted curve: either a population trace ("t,P") or a derived curve
/// such as T1 versus lambda ("lambda,T1").
struct TraceEntry {
    std::string solver;           ///< provenance tag, e.g. "laplace" or "t1"
    std::string knob;             ///< swept parameter name ("lambda", "Lambda", "alpha")
    double value = 0.0;           ///< knob value for this curve
    std::string header = "t,P";   ///< CSV header line
    std::vector<double> xs;
    std::vector<double> ys;
    std::map<std::string, double> params;
    std::string file;             ///< CSV filename, filled by write_outputs

    bool operator==(const TraceEntry&) const = default;
};

TraceEntry trace_entry(const PopulationTrace& trace, const std::string& knob, double value);

/// Persisted run: resolved configuration, software version, every curve, and
/// convergence diagnostics. Serializes to a JSON document that re-parses to
/// an identical record; data CSVs carry no timestamps so identical config and
/// version give byte-identical data files.
struct RunRecord {
    std::string run_id;
    std::string timestamp;  ///< ISO-8601 UTC; metadata only, never in CSVs
    std::string version;
    std::string config_json;
    std::vector<TraceEntry> traces;
    std::string diagnostics_json = "{}";
    double duration_seconds = 0.0;

    bool operator==(const RunRecord&) const = default;
};

std::string serialize(const RunRecord& record);
RunRecord parse_run_record(const std::string& text);

/// Deterministic run id: 64-bit FNV-1a over version + request description.
std::string make_run_id(const std::string& request_description);

std::string current_timestamp_utc();

/// Writes one CSV per trace entry (named <run_id>_<solver>_<knob>=<value>.csv,
/// fixed 17-significant-digit formatting) plus <run_id>_record.json, filling
/// each entry's `file`. On failure every file already written for this run is
/// removed before the error propagates.
std::vector<std::filesystem::path> write_outputs(RunRecord& record,
                                                 const std::filesystem::path& out_dir);

}  // namespace tlsdyn
