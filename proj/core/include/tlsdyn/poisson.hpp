#pragma once

#include <cstddef>
#include <vector>

namespace tlsdyn {

struct PoissonTerm {
    int l;
    double weight;  // exp(-lam) * lam^l / l!
};

/// Hard cap on the truncation order of any Poisson-weighted series. All
/// regimes studied here use lam <= 3 where fewer than 40 terms survive; the
/// cap turns an absurd lam into an error instead of a runaway loop.
inline constexpr int kPoissonSeriesCap = 512;

/// Weights of a Poisson distribution with mean `lam`, truncated at the
/// smallest order L whose residual tail mass is below `tol`. Computed by the
/// recursion w_{l+1} = w_l * lam/(l+1); no factorials are evaluated.
/// The returned weights sum to a value in [1 - tol, 1].
/// Throws "series cap exceeded" if L would pass kPoissonSeriesCap.
std::vector<PoissonTerm> poisson_weights(double lam, double tol);

}  // namespace tlsdyn
