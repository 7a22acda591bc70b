#include "tlsdyn/poisson.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tlsdyn {

std::vector<PoissonTerm> poisson_weights(double lam, double tol) {
    if (!(lam >= 0.0)) throw std::invalid_argument("lam must be non-negative");
    if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("tol must lie in (0, 1)");

    if (lam == 0.0) return {{0, 1.0}};

    std::vector<PoissonTerm> terms;
    double w = std::exp(-lam);
    double cumulative = 0.0;
    for (int l = 0; l <= kPoissonSeriesCap; ++l) {
        terms.push_back({l, w});
        cumulative += w;
        if (1.0 - cumulative < tol) return terms;
        w *= lam / static_cast<double>(l + 1);
    }
    throw std::runtime_error("series cap exceeded: Poisson truncation would pass order " +
                             std::to_string(kPoissonSeriesCap) + " for lam=" + std::to_string(lam));
}

}  // namespace tlsdyn
