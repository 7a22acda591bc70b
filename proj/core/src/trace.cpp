#include "tlsdyn/trace.hpp"

namespace tlsdyn {

std::string to_string(SolverTag tag) {
    switch (tag) {
        case SolverTag::laplace: return "laplace";
        case SolverTag::volterra: return "volterra";
        case SolverTag::closed_form: return "closed_form";
        case SolverTag::heom: return "heom";
        case SolverTag::exp_approx: return "exp_approx";
    }
    throw std::runtime_error("unreachable solver tag");
}

SolverTag solver_tag_from_string(const std::string& s) {
    if (s == "laplace") return SolverTag::laplace;
    if (s == "volterra") return SolverTag::volterra;
    if (s == "closed_form") return SolverTag::closed_form;
    if (s == "heom") return SolverTag::heom;
    if (s == "exp_approx") return SolverTag::exp_approx;
    throw std::invalid_argument("unknown solver tag: " + s);
}

}  // namespace tlsdyn
