#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tlsdyn {

/// Uniform sampling grid for time traces.
struct TimeGrid {
    double t_start = 0.0;
    double t_end = 1.0;
    std::size_t n_points = 2;

    void validate() const {
        if (!(t_start >= 0.0)) throw std::invalid_argument("t_start must be non-negative");
        if (!(t_end > t_start)) throw std::invalid_argument("t_end must exceed t_start");
        if (n_points < 2) throw std::invalid_argument("n_points must be at least 2");
    }

    double step() const { return (t_end - t_start) / static_cast<double>(n_points - 1); }

    std::vector<double> times() const {
        validate();
        std::vector<double> t(n_points);
        const double h = step();
        for (std::size_t i = 0; i < n_points; ++i) t[i] = t_start + h * static_cast<double>(i);
        t.back() = t_end;
        return t;
    }
};

}  // namespace tlsdyn
