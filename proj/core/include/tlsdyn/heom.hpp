#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "tlsdyn/bath.hpp"
#include "tlsdyn/time_grid.hpp"
#include "tlsdyn/trace.hpp"

namespace tlsdyn {

/// Exact non-RWA propagation of the TLS + ancillary oscillator coupled
/// through sigma_x to the Lorentz bath, via the two-index hierarchy of
/// equations of motion. The single-exponential bath correlation
/// C(t) = alpha e^{-(omega_c + i epsilon) t} closes the hierarchy with the
/// damping vector upsilon = (omega_c - i epsilon, omega_c + i epsilon).
struct HeomConfig {
    double epsilon = 1.0;   ///< TLS transition frequency
    double omega0 = 1.0;    ///< oscillator frequency
    double g0 = 0.0;        ///< TLS-oscillator coupling (sigma_z (a + a^dag))
    double alpha = 0.01;    ///< bath coupling constant
    double omega_c = 1.0;   ///< bath cutoff
    int fock_dim = 10;      ///< oscillator truncation N_a
    int ell_c = 8;          ///< hierarchy depth: keep l1 + l2 <= ell_c
    double dt = 0.0;        ///< integrator step; 0 selects the default

    int dim() const { return 2 * fock_dim; }
    int ado_count() const { return (ell_c + 1) * (ell_c + 2) / 2; }

    /// Default step resolves the fastest phase in the H_sa spectrum.
    double step() const {
        if (dt > 0.0) return dt;
        double scale = std::max({epsilon, omega_c, omega0 * fock_dim, 1.0});
        return 0.005 / scale;
    }

    void validate() const;
};

/// Two-dimensional hierarchy index (l1, l2), l1 + l2 <= ell_c, densely
/// enumerated as flat indices 0 .. ado_count()-1.
struct AdoIndex {
    int l1 = 0;
    int l2 = 0;
};

std::vector<AdoIndex> ado_indices(int ell_c);
int ado_flat_index(int ell_c, int l1, int l2);

/// Indexed family of auxiliary density operators; ados[0] (index (0,0)) is
/// the physical TLS + oscillator density matrix. Trace of ados[0] is
/// conserved and the family obeys the adjoint pairing
/// ados[(l1,l2)]^dag == ados[(l2,l1)] throughout the evolution.
struct HierarchyState {
    std::vector<Eigen::MatrixXcd> ados;
    double time = 0.0;
};

/// System Hamiltonian (1/2) epsilon sigma_z + omega0 a^dag a
/// + g0 sigma_z (a^dag + a) on the TLS (x) Fock product basis, ordered
/// |e,0..N-1>, |g,0..N-1>; Hermitian and tridiagonal in this ordering.
Eigen::MatrixXcd build_hsa(const HeomConfig& config);

/// Right-hand side of the hierarchy at one instant (reference semantics for
/// tests; the propagator used by heom_evolve applies the same update with
/// preallocated workspaces).
HierarchyState heom_rhs(const HierarchyState& state, const HeomConfig& config);

/// Fresh hierarchy at t = 0: ados[(0,0)] = rho_sa0, every other ADO zero.
HierarchyState initial_hierarchy(const HeomConfig& config, const Eigen::MatrixXcd& rho_sa0);

struct HeomResult {
    PopulationTrace trace;                    ///< P(t) = Tr[sigma_z rho_s(t)]
    std::vector<Eigen::Matrix2cd> reduced;    ///< rho_s(t) = Tr_osc rho_(0,0)(t)
    double max_trace_drift = 0.0;             ///< max |Tr rho_(0,0) - 1| seen
    double max_adjoint_residual = 0.0;        ///< max pairing violation seen
};

/// Classical fourth-order fixed-step propagation of the hierarchy, sampled on
/// the grid (grid must start at 0). Throws "trace drift" / "hermiticity
/// drift" if the respective residual passes 1e-6 at any step.
HeomResult heom_evolve(const HeomConfig& config, const Eigen::MatrixXcd& rho_sa0,
                       const TimeGrid& grid);

/// Density matrix |e><e| (x) |0><0| on the product basis of `config`.
Eigen::MatrixXcd excited_vacuum_state(const HeomConfig& config);

struct ConvergenceReport {
    double delta_depth = 0.0;  ///< max |dP| when rerun at ell_c + 2
    double delta_fock = 0.0;   ///< max |dP| when rerun at fock_dim + 2
    bool converged = false;    ///< both deltas below threshold
    double threshold = 1e-4;
};

/// Reruns the evolution at (ell_c + 2) and at (fock_dim + 2) and reports the
/// largest change in P(t). Not converging is a recommendation, not an error.
ConvergenceReport convergence_check(const HeomConfig& config, const Eigen::MatrixXcd& rho_sa0,
                                    const TimeGrid& grid, double threshold = 1e-4);

/// heom_evolve with the hierarchy depth raised by 2 until convergence_check
/// passes or `ell_ceiling` is reached; reports the depth actually used.
struct ConvergedRun {
    HeomResult result;
    ConvergenceReport report;
    int ell_c_used = 0;
};
ConvergedRun heom_evolve_converged(HeomConfig config, const Eigen::MatrixXcd& rho_sa0,
                                   const TimeGrid& grid, int ell_ceiling = 30);

}  // namespace tlsdyn
