#include "tlsdyn/heom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tlsdyn {

using cd = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

void HeomConfig::validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(omega0 > 0.0)) throw std::invalid_argument("omega0 must be positive");
    if (!(g0 >= 0.0)) throw std::invalid_argument("g0 must be non-negative");
    if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
    if (!(omega_c > 0.0)) throw std::invalid_argument("omega_c must be positive");
    if (fock_dim < 1) throw std::invalid_argument("fock_dim must be at least 1");
    if (ell_c < 0) throw std::invalid_argument("ell_c must be non-negative");
    if (!(dt >= 0.0)) throw std::invalid_argument("dt must be non-negative");
}

std::vector<AdoIndex> ado_indices(int ell_c) {
    std::vector<AdoIndex> out;
    out.reserve((ell_c + 1) * (ell_c + 2) / 2);
    for (int l1 = 0; l1 <= ell_c; ++l1)
        for (int l2 = 0; l2 <= ell_c - l1; ++l2) out.push_back({l1, l2});
    return out;
}

int ado_flat_index(int ell_c, int l1, int l2) {
    if (l1 < 0 || l2 < 0 || l1 + l2 > ell_c) return -1;
    // l1 rows of lengths ell_c+1, ell_c, ... precede (l1, 0)
    return l1 * (ell_c + 1) - l1 * (l1 - 1) / 2 + l2;
}

Eigen::MatrixXcd build_hsa(const HeomConfig& config) {
    config.validate();
    const int na = config.fock_dim;
    const int d = config.dim();
    MatrixXcd h = MatrixXcd::Zero(d, d);
    for (int s = 0; s < 2; ++s) {
        const double sz = s == 0 ? 1.0 : -1.0;
        for (int n = 0; n < na; ++n) {
            const int i = s * na + n;
            h(i, i) = 0.5 * config.epsilon * sz + config.omega0 * n;
            if (n + 1 < na) {
                const double v = config.g0 * sz * std::sqrt(static_cast<double>(n + 1));
                h(i, i + 1) = v;
                h(i + 1, i) = v;
            }
        }
    }
    return h;
}

Eigen::MatrixXcd excited_vacuum_state(const HeomConfig& config) {
    MatrixXcd rho = MatrixXcd::Zero(config.dim(), config.dim());
    rho(0, 0) = 1.0;
    return rho;
}

HierarchyState initial_hierarchy(const HeomConfig& config, const Eigen::MatrixXcd& rho_sa0) {
    config.validate();
    const int d = config.dim();
    if (rho_sa0.rows() != d || rho_sa0.cols() != d)
        throw std::invalid_argument("rho_sa0 dimension does not match 2 * fock_dim");
    HierarchyState state;
    state.ados.assign(config.ado_count(), MatrixXcd::Zero(d, d));
    state.ados[0] = rho_sa0;
    state.time = 0.0;
    return state;
}

namespace {

// sigma_x (x) 1_osc acts by swapping the e/g block rows (left product) or
// block columns (right product); no arithmetic beyond the copy is needed.
MatrixXcd sigx_left(const MatrixXcd& x, int na) {
    MatrixXcd out(x.rows(), x.cols());
    out.topRows(na) = x.bottomRows(na);
    out.bottomRows(na) = x.topRows(na);
    return out;
}

MatrixXcd sigx_right(const MatrixXcd& x, int na) {
    MatrixXcd out(x.rows(), x.cols());
    out.leftCols(na) = x.rightCols(na);
    out.rightCols(na) = x.leftCols(na);
    return out;
}

}  // namespace

HierarchyState heom_rhs(const HierarchyState& state, const HeomConfig& config) {
    config.validate();
    const int na = config.fock_dim;
    const auto indices = ado_indices(config.ell_c);
    if (state.ados.size() != indices.size())
        throw std::invalid_argument("hierarchy state does not match ell_c");

    const MatrixXcd h = build_hsa(config);
    const cd ups1(config.omega_c, -config.epsilon);
    const cd ups2(config.omega_c, config.epsilon);
    const cd mi(0.0, -1.0);

    HierarchyState deriv;
    deriv.time = state.time;
    deriv.ados.resize(state.ados.size());
    for (std::size_t m = 0; m < indices.size(); ++m) {
        const auto [l1, l2] = indices[m];
        const MatrixXcd& x = state.ados[m];
        MatrixXcd d = mi * (h * x - x * h) -
                      (static_cast<double>(l1) * ups1 + static_cast<double>(l2) * ups2) * x;
        // coupling to deeper ADOs: Phi = -i [sigma_x, .]
        const int up1 = ado_flat_index(config.ell_c, l1 + 1, l2);
        const int up2 = ado_flat_index(config.ell_c, l1, l2 + 1);
        if (up1 >= 0 || up2 >= 0) {
            MatrixXcd s = MatrixXcd::Zero(x.rows(), x.cols());
            if (up1 >= 0) s += state.ados[up1];
            if (up2 >= 0) s += state.ados[up2];
            d += mi * (sigx_left(s, na) - sigx_right(s, na));
        }
        // coupling to shallower ADOs. The branch damped by omega_c + i epsilon
        // carries the correlation function itself and acts from the left; its
        // conjugate branch acts from the right. This pairing is what
        // reproduces the Born master equation when the first tier is
        // adiabatically eliminated.
        if (l1 > 0)
            d += static_cast<double>(l1) * cd(0.0, config.alpha) *
                 sigx_right(state.ados[ado_flat_index(config.ell_c, l1 - 1, l2)], na);
        if (l2 > 0)
            d += static_cast<double>(l2) * cd(0.0, -config.alpha) *
                 sigx_left(state.ados[ado_flat_index(config.ell_c, l1, l2 - 1)], na);
        deriv.ados[m] = std::move(d);
    }
    return deriv;
}

namespace {

// Adds i * c * src to dst over n complex entries (component form).
inline void axpy_times_i(double* dst, const double* src, double c, int n) {
    for (int k = 0; k < n; ++k) {
        dst[2 * k] -= c * src[2 * k + 1];
        dst[2 * k + 1] += c * src[2 * k];
    }
}

// Adds i * c * swap_halves(src) to dst, where swap_halves exchanges the
// first and second na complex entries of a length-2na column.
inline void axpy_times_i_swapped(double* dst, const double* src, double c, int na) {
    axpy_times_i(dst, src + 2 * na, c, na);
    axpy_times_i(dst + 2 * na, src, c, na);
}

// Flat-vector propagator: the whole hierarchy lives in one contiguous
// VectorXcd (blocks of d*d, column major) so the RK4 combinations are single
// vectorized expressions. The per-ADO update is a fused column-local stencil:
// H is tridiagonal with real entries, sigma_x (x) 1 swaps the e/g halves of a
// column (left product) or swaps whole columns (right product), so every term
// of the hierarchy touches column j through at most eight source columns.
class Propagator {
  public:
    explicit Propagator(const HeomConfig& config)
        : na_(config.fock_dim),
          d_(config.dim()),
          dd_(config.dim() * config.dim()),
          alpha_(config.alpha),
          indices_(ado_indices(config.ell_c)) {
        const MatrixXcd h = build_hsa(config);
        hdiag_.resize(d_);
        for (int i = 0; i < d_; ++i) hdiag_[i] = h(i, i).real();
        hoff_.assign(d_, 0.0);  // hoff_[i] couples rows/cols i and i+1; [d-1] stays 0
        for (int i = 0; i + 1 < d_; ++i) hoff_[i] = h(i, i + 1).real();
        const cd ups1(config.omega_c, -config.epsilon);
        const cd ups2(config.omega_c, config.epsilon);
        for (const auto& [l1, l2] : indices_) {
            damping_.push_back(static_cast<double>(l1) * ups1 + static_cast<double>(l2) * ups2);
            up1_.push_back(ado_flat_index(config.ell_c, l1 + 1, l2));
            up2_.push_back(ado_flat_index(config.ell_c, l1, l2 + 1));
            down1_.push_back(ado_flat_index(config.ell_c, l1 - 1, l2));
            down2_.push_back(ado_flat_index(config.ell_c, l1, l2 - 1));
        }
    }

    int state_size() const { return static_cast<int>(indices_.size()) * dd_; }
    int dim() const { return d_; }
    const std::vector<AdoIndex>& indices() const { return indices_; }

    void rhs(const VectorXcd& in, VectorXcd& out) const {
        const auto m_count = static_cast<int>(indices_.size());
        for (int m = 0; m < m_count; ++m) rhs_one(in.data(), out.data(), m);
    }

  private:
    void rhs_one(const cd* in, cd* out, int m) const {
        const cd* x = in + static_cast<std::ptrdiff_t>(m) * dd_;
        cd* dst = out + static_cast<std::ptrdiff_t>(m) * dd_;
        const double dr = damping_[m].real();
        const double di = damping_[m].imag();
        const cd* u1 = up1_[m] >= 0 ? in + static_cast<std::ptrdiff_t>(up1_[m]) * dd_ : nullptr;
        const cd* u2 = up2_[m] >= 0 ? in + static_cast<std::ptrdiff_t>(up2_[m]) * dd_ : nullptr;
        const cd* y1 =
            down1_[m] >= 0 ? in + static_cast<std::ptrdiff_t>(down1_[m]) * dd_ : nullptr;
        const cd* y2 =
            down2_[m] >= 0 ? in + static_cast<std::ptrdiff_t>(down2_[m]) * dd_ : nullptr;
        const double c1 = static_cast<double>(indices_[m].l1) * alpha_;
        const double c2 = static_cast<double>(indices_[m].l2) * alpha_;

        for (int j = 0; j < d_; ++j) {
            const int jswap = j < na_ ? j + na_ : j - na_;
            const double hj = hdiag_[j];
            const double* xj = reinterpret_cast<const double*>(x + j * d_);
            double* dj = reinterpret_cast<double*>(dst + j * d_);

            // dst_j = -i (H x - x H)_j - damping x_j, column-local part:
            //   w_i = (hd_i - hd_j) x_ij + ho_i x_{i+1,j} + ho_{i-1} x_{i-1,j}
            //   dst_ij = (w_im - dr xr + di xi) + i (-w_re - dr xi - di xr)
            auto emit = [&](int i, double wr, double wi) {
                const double xr = xj[2 * i];
                const double xi = xj[2 * i + 1];
                dj[2 * i] = wi - dr * xr + di * xi;
                dj[2 * i + 1] = -wr - dr * xi - di * xr;
            };
            {
                const double a0 = hdiag_[0] - hj;
                emit(0, a0 * xj[0] + hoff_[0] * xj[2], a0 * xj[1] + hoff_[0] * xj[3]);
            }
            for (int i = 1; i < d_ - 1; ++i) {
                const double a = hdiag_[i] - hj;
                const double lo = hoff_[i - 1];
                const double hi = hoff_[i];
                emit(i, a * xj[2 * i] + lo * xj[2 * i - 2] + hi * xj[2 * i + 2],
                     a * xj[2 * i + 1] + lo * xj[2 * i - 1] + hi * xj[2 * i + 3]);
            }
            {
                const int i = d_ - 1;
                const double a = hdiag_[i] - hj;
                const double lo = hoff_[i - 1];
                emit(i, a * xj[2 * i] + lo * xj[2 * i - 2],
                     a * xj[2 * i + 1] + lo * xj[2 * i - 1]);
            }
            // -i (x H) column neighbors enter with +i
            if (j + 1 < d_ && hoff_[j] != 0.0)
                axpy_times_i(dj, reinterpret_cast<const double*>(x + (j + 1) * d_), hoff_[j],
                             d_);
            if (j > 0 && hoff_[j - 1] != 0.0)
                axpy_times_i(dj, reinterpret_cast<const double*>(x + (j - 1) * d_),
                             hoff_[j - 1], d_);

            // Phi on the up neighbors: -i sigma_x s (half swap) + i s sigma_x
            // (swapped column)
            if (u1 != nullptr) {
                axpy_times_i_swapped(dj, reinterpret_cast<const double*>(u1 + j * d_), -1.0,
                                     na_);
                axpy_times_i(dj, reinterpret_cast<const double*>(u1 + jswap * d_), 1.0, d_);
            }
            if (u2 != nullptr) {
                axpy_times_i_swapped(dj, reinterpret_cast<const double*>(u2 + j * d_), -1.0,
                                     na_);
                axpy_times_i(dj, reinterpret_cast<const double*>(u2 + jswap * d_), 1.0, d_);
            }
            // down couplings: + i l1 alpha (y1 sigma_x), - i l2 alpha (sigma_x y2)
            if (y1 != nullptr)
                axpy_times_i(dj, reinterpret_cast<const double*>(y1 + jswap * d_), c1, d_);
            if (y2 != nullptr)
                axpy_times_i_swapped(dj, reinterpret_cast<const double*>(y2 + j * d_), -c2,
                                     na_);
        }
    }

  public:

    double trace_block0(const VectorXcd& state) const {
        Eigen::Map<const MatrixXcd> rho(state.data(), d_, d_);
        return std::abs(rho.trace() - 1.0);
    }

    double adjoint_residual(const VectorXcd& state, int ell_c) const {
        double worst = 0.0;  // squared magnitude; one sqrt at the end
        for (std::size_t m = 0; m < indices_.size(); ++m) {
            const auto [l1, l2] = indices_[m];
            if (l1 > l2) continue;
            const int mate = ado_flat_index(ell_c, l2, l1);
            const cd* a = state.data() + static_cast<std::ptrdiff_t>(m) * dd_;
            const cd* b = state.data() + static_cast<std::ptrdiff_t>(mate) * dd_;
            for (int j = 0; j < d_; ++j)
                for (int i = 0; i < d_; ++i) {
                    const cd diff = std::conj(a[j + i * d_]) - b[i + j * d_];
                    const double mag2 = diff.real() * diff.real() + diff.imag() * diff.imag();
                    if (mag2 > worst) worst = mag2;
                }
        }
        return std::sqrt(worst);
    }

  private:
    int na_, d_, dd_;
    double alpha_;
    std::vector<AdoIndex> indices_;
    std::vector<double> hdiag_;
    std::vector<double> hoff_;
    std::vector<cd> damping_;
    std::vector<int> up1_, up2_, down1_, down2_;
};

void validate_initial_state(const Eigen::MatrixXcd& rho, int d) {
    if (rho.rows() != d || rho.cols() != d)
        throw std::invalid_argument("rho_sa0 dimension does not match 2 * fock_dim");
    if (std::abs(rho.trace() - 1.0) > 1e-10)
        throw std::invalid_argument("rho_sa0 must have unit trace");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("rho_sa0 must be Hermitian");
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-9)
        throw std::invalid_argument("rho_sa0 must be positive semidefinite");
}

Eigen::MatrixXcd embed_fock(const Eigen::MatrixXcd& rho, int na_from, int na_to) {
    if (na_to == na_from) return rho;
    MatrixXcd out = MatrixXcd::Zero(2 * na_to, 2 * na_to);
    for (int s = 0; s < 2; ++s)
        for (int sp = 0; sp < 2; ++sp)
            out.block(s * na_to, sp * na_to, na_from, na_from) =
                rho.block(s * na_from, sp * na_from, na_from, na_from);
    return out;
}

}  // namespace

HeomResult heom_evolve(const HeomConfig& config, const Eigen::MatrixXcd& rho_sa0,
                       const TimeGrid& grid) {
    config.validate();
    grid.validate();
    if (grid.t_start != 0.0) throw std::invalid_argument("heom grid must start at t = 0");
    const int d = config.dim();
    const int na = config.fock_dim;
    validate_initial_state(rho_sa0, d);

    const Propagator prop(config);
    VectorXcd y = VectorXcd::Zero(prop.state_size());
    Eigen::Map<MatrixXcd>(y.data(), d, d) = rho_sa0;

    VectorXcd k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), tmp(y.size());
    const double h = config.step();

    HeomResult result;
    result.trace.solver_tag = SolverTag::heom;
    result.trace.times = grid.times();
    result.trace.params = {{"epsilon", config.epsilon}, {"omega0", config.omega0},
                           {"g0", config.g0},           {"alpha", config.alpha},
                           {"omega_c", config.omega_c}, {"fock_dim", static_cast<double>(na)},
                           {"ell_c", static_cast<double>(config.ell_c)}, {"dt", h}};
    result.reduced.reserve(grid.n_points);

    auto record = [&](const VectorXcd& state) {
        Eigen::Map<const MatrixXcd> rho(state.data(), d, d);
        Eigen::Matrix2cd rs = Eigen::Matrix2cd::Zero();
        for (int s = 0; s < 2; ++s)
            for (int sp = 0; sp < 2; ++sp)
                for (int n = 0; n < na; ++n) rs(s, sp) += rho(s * na + n, sp * na + n);
        result.reduced.push_back(rs);
        result.trace.values.push_back((rs(0, 0) - rs(1, 1)).real());
    };

    auto check = [&](const VectorXcd& state) {
        const double drift = prop.trace_block0(state);
        result.max_trace_drift = std::max(result.max_trace_drift, drift);
        if (!(drift <= 1e-6))  // negated so NaN from a blown-up step also lands here
            throw std::runtime_error("trace drift: |Tr rho_(0,0) - 1| = " + std::to_string(drift));
        const double res = prop.adjoint_residual(state, config.ell_c);
        result.max_adjoint_residual = std::max(result.max_adjoint_residual, res);
        if (!(res <= 1e-6))
            throw std::runtime_error("hermiticity drift: adjoint pairing residual = " +
                                     std::to_string(res));
    };

    double t = 0.0;
    check(y);
    for (double target : result.trace.times) {
        const double span = target - t;
        if (span > 0.0) {
            const auto nsub = std::max<std::size_t>(
                static_cast<std::size_t>(std::ceil(span / h - 1e-9)), 1);
            const double dt = span / static_cast<double>(nsub);
            for (std::size_t i = 0; i < nsub; ++i) {
                prop.rhs(y, k1);
                tmp = y + (0.5 * dt) * k1;
                prop.rhs(tmp, k2);
                tmp = y + (0.5 * dt) * k2;
                prop.rhs(tmp, k3);
                tmp = y + dt * k3;
                prop.rhs(tmp, k4);
                y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                check(y);
            }
            t = target;
        }
        record(y);
    }
    return result;
}

namespace {

ConvergenceReport deltas_against(const HeomConfig& config, const Eigen::MatrixXcd& rho_sa0,
                                 const TimeGrid& grid, const PopulationTrace& base,
                                 double threshold) {
    HeomConfig deeper = config;
    deeper.ell_c += 2;
    const HeomResult depth = heom_evolve(deeper, rho_sa0, grid);

    HeomConfig wider = config;
    wider.fock_dim += 2;
    const HeomResult fock =
        heom_evolve(wider, embed_fock(rho_sa0, config.fock_dim, wider.fock_dim), grid);

    ConvergenceReport report;
    report.threshold = threshold;
    for (std::size_t i = 0; i < base.values.size(); ++i) {
        report.delta_depth =
            std::max(report.delta_depth, std::abs(base.values[i] - depth.trace.values[i]));
        report.delta_fock =
            std::max(report.delta_fock, std::abs(base.values[i] - fock.trace.values[i]));
    }
    report.converged = report.delta_depth < threshold && report.delta_fock < threshold;
    return report;
}

}  // namespace

ConvergenceReport convergence_check(const HeomConfig& config, const Eigen::MatrixXcd& rho_sa0,
                                    const TimeGrid& grid, double threshold) {
    const HeomResult base = heom_evolve(config, rho_sa0, grid);
    return deltas_against(config, rho_sa0, grid, base.trace, threshold);
}

ConvergedRun heom_evolve_converged(HeomConfig config, const Eigen::MatrixXcd& rho_sa0,
                                   const TimeGrid& grid, int ell_ceiling) {
    for (;;) {
        ConvergedRun run;
        run.result = heom_evolve(config, rho_sa0, grid);
        run.report = deltas_against(config, rho_sa0, grid, run.result.trace, 1e-4);
        run.ell_c_used = config.ell_c;
        if (run.report.converged || config.ell_c + 2 > ell_ceiling) return run;
        config.ell_c += 2;
    }
}

}  // namespace tlsdyn
