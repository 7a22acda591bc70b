#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "tlsdyn/trace.hpp"

namespace tlsdyn {

/// %.17g: enough significant digits that reading the text back reproduces the
/// double bit-exactly.
std::string format_g17(double v);

void write_xy_csv(const std::filesystem::path& path, const std::string& header,
                  const std::vector<double>& xs, const std::vector<double>& ys);

void write_trace_csv(const std::filesystem::path& path, const PopulationTrace& trace);

/// Reads a two-column CSV written by write_xy_csv, skipping the header.
std::pair<std::vector<double>, std::vector<double>> read_xy_csv(
    const std::filesystem::path& path);

}  // namespace tlsdyn
