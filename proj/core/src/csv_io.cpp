#include "tlsdyn/csv_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace tlsdyn {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_xy_csv(const std::filesystem::path& path, const std::string& header,
                  const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("csv column length mismatch");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << header << '\n';
    for (std::size_t i = 0; i < xs.size(); ++i)
        out << format_g17(xs[i]) << ',' << format_g17(ys[i]) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_trace_csv(const std::filesystem::path& path, const PopulationTrace& trace) {
    write_xy_csv(path, "t,P", trace.times, trace.values);
}

std::pair<std::vector<double>, std::vector<double>> read_xy_csv(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path.string());
    std::vector<double> xs, ys;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("malformed csv row in " + path.string() + ": " + line);
        xs.push_back(std::strtod(line.substr(0, comma).c_str(), nullptr));
        ys.push_back(std::strtod(line.c_str() + comma + 1, nullptr));
    }
    return {std::move(xs), std::move(ys)};
}

}  // namespace tlsdyn
