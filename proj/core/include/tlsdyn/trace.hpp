#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace tlsdyn {

enum class SolverTag { laplace, volterra, closed_form, heom, exp_approx };

std::string to_string(SolverTag tag);
SolverTag solver_tag_from_string(const std::string& s);

/// Sampled population difference P(t) = 2 rho_ee(t) - 1 with solver
/// provenance and a full echo of the parameters that produced it.
struct PopulationTrace {
    std::vector<double> times;
    std::vector<double> values;
    SolverTag solver_tag = SolverTag::laplace;
    std::map<std::string, double> params;

    /// len(times) == len(values) and every value in [-1, 1] up to `tol`.
    void check_valid(double tol = 1e-6) const {
        if (times.size() != values.size())
            throw std::runtime_error("trace length mismatch between times and values");
        for (double v : values)
            if (!(v >= -1.0 - tol && v <= 1.0 + tol))
                throw std::runtime_error("trace value outside [-1, 1] beyond solver tolerance");
    }
};

}  // namespace tlsdyn
