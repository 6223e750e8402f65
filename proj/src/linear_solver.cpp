#include "sg/linear_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sg {

SystemOperator::SystemOperator(std::shared_ptr<const Stencil> stencil, double tau, MeshFunction d)
    : stencil_(std::move(stencil)), tau_(tau), d_(std::move(d))
{
    if (!stencil_)
        throw ConfigError("system operator: null stencil");
    if (!std::isfinite(tau) || tau < 0.0)
        throw ConfigError("system operator: tau must be finite and non-negative");
    stencil_->require_on_grid(d_);
    d_.require_finite("system operator diagonal");

    const Grid& g = stencil_->grid();
    const double lap_diag = 2.0 * (stencil_->inv_h1_sq() + stencil_->inv_h2_sq());
    diagonal_ = MeshFunction(d_.grid_ptr());
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.is_boundary(i))
            diagonal_[i] = 1.0;
        else
            diagonal_[i] = 1.0 + 0.25 * tau_ * tau_ * lap_diag + 0.125 * tau_ * tau_ * d_[i] * d_[i];
    }
}

void SystemOperator::apply_into(std::span<const double> w, std::span<double> out) const
{
    const Grid& g = stencil_->grid();
    laplacian_homogeneous_into(*stencil_, w, out);
    const double a = 0.25 * tau_ * tau_;
    const double c = 0.125 * tau_ * tau_;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (g.is_boundary(i)) {
            out[i] = w[i];
            continue;
        }
        out[i] = w[i] - a * out[i] + c * d_[i] * d_[i] * w[i];
    }
}

MeshFunction SystemOperator::apply(const MeshFunction& w) const
{
    stencil_->require_on_grid(w);
    MeshFunction out(w.grid_ptr());
    apply_into(w.values(), out.data());
    return out;
}

std::size_t default_max_iterations(const Grid& grid)
{
    return static_cast<std::size_t>(std::ceil(10.0 * std::sqrt(static_cast<double>(grid.size()))));
}

namespace {

double dot(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

} // namespace

SolveResult pcg_solve(const SystemOperator& op, const MeshFunction& rhs, const PcgOptions& options,
                      const MeshFunction* guess)
{
    const Stencil& st = op.stencil();
    st.require_on_grid(rhs);
    if (!(options.tol > 0.0))
        throw ConfigError("pcg: tolerance must be positive");
    rhs.require_finite("pcg right-hand side");

    const Grid& g = st.grid();
    const double w = g.cell_measure();
    const std::size_t n = g.size();
    const std::size_t max_iter = options.max_iter ? options.max_iter : default_max_iterations(g);
    const double threshold = options.tol * std::max(1.0, l2(rhs));

    SolveResult result{guess ? *guess : MeshFunction(rhs.grid_ptr()), {}};
    if (guess) {
        st.require_on_grid(*guess);
        guess->require_finite("pcg initial guess");
    }
    auto x = result.x.data();
    const auto b = rhs.values();
    const auto& diag = op.diagonal();

    std::vector<double> r(n), z(n), p(n), q(n);

    auto true_residual = [&]() {
        op.apply_into(x, q);
        for (std::size_t i = 0; i < n; ++i)
            r[i] = b[i] - q[i];
        return std::sqrt(w * dot(r, r));
    };

    double res = true_residual();
    std::size_t it = 0;
    // Outer loop restarts from the true residual if the recurrence drifted
    // below the threshold before the iterate actually got there.
    while (res > threshold && it < max_iter) {
        for (std::size_t i = 0; i < n; ++i)
            z[i] = r[i] / diag[i];
        p = z;
        double rz = dot(r, z);
        while (it < max_iter) {
            op.apply_into(p, q);
            const double pq = dot(p, q);
            if (!(pq > 0.0) || !std::isfinite(pq))
                throw NumericalError("pcg: breakdown (p^T A p = " + std::to_string(pq) + ")");
            const double alpha = rz / pq;
            for (std::size_t i = 0; i < n; ++i) {
                x[i] += alpha * p[i];
                r[i] -= alpha * q[i];
            }
            ++it;
            if (options.on_iterate)
                options.on_iterate(it, result.x);
            const double rr = std::sqrt(w * dot(r, r));
            if (!std::isfinite(rr))
                throw NumericalError("pcg: non-finite residual");
            if (rr <= threshold)
                break;
            for (std::size_t i = 0; i < n; ++i)
                z[i] = r[i] / diag[i];
            const double rz_new = dot(r, z);
            const double beta = rz_new / rz;
            rz = rz_new;
            for (std::size_t i = 0; i < n; ++i)
                p[i] = z[i] + beta * p[i];
        }
        res = true_residual();
    }

    result.report.iterations = it;
    result.report.final_residual = res;
    result.report.converged = res <= threshold;
    if (!result.report.converged)
        throw NumericalError("pcg: no convergence in " + std::to_string(max_iter) +
                             " iterations (residual " + std::to_string(res) + ")");
    result.x.require_finite("pcg solution");
    return result;
}

} // namespace sg
