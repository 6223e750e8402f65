#pragma once

#include "sg/operators.hpp"

#include <functional>
#include <memory>

namespace sg {

/**
 * Matrix-free  A = I - (tau^2/4) Lap_h + (tau^2/8) D^2,  D = diag(d).
 *
 * On DirichletExact grids the outer ring rows are the identity and interior
 * rows see the ring as zero (boundary data belongs on the right-hand side),
 * which keeps A symmetric. Every correction term is positive semidefinite,
 * so <A w, w>_h >= <w, w>_h.
 */
class SystemOperator {
public:
    SystemOperator(std::shared_ptr<const Stencil> stencil, double tau, MeshFunction d);

    const Stencil& stencil() const { return *stencil_; }
    const Grid& grid() const { return stencil_->grid(); }
    double tau() const { return tau_; }
    const MeshFunction& d() const { return d_; }

    MeshFunction apply(const MeshFunction& w) const;
    void apply_into(std::span<const double> w, std::span<double> out) const;

    /// Exact diagonal of A, used as the Jacobi preconditioner.
    const MeshFunction& diagonal() const { return diagonal_; }

private:
    std::shared_ptr<const Stencil> stencil_;
    double tau_;
    MeshFunction d_;
    MeshFunction diagonal_;
};

struct SolveReport {
    std::size_t iterations = 0;
    double final_residual = 0.0; ///< l2 of rhs - A x, recomputed at exit
    bool converged = false;
};

struct PcgOptions {
    /// Stop when l2(rhs - A x) <= tol * max(1, l2(rhs)).
    double tol = 1e-14;
    /// 0 selects 10 * sqrt(node count).
    std::size_t max_iter = 0;
    /// Called with (iteration, iterate) after every update; tests use it.
    std::function<void(std::size_t, const MeshFunction&)> on_iterate;
};

struct SolveResult {
    MeshFunction x;
    SolveReport report;
};

std::size_t default_max_iterations(const Grid& grid);

/**
 * Jacobi-preconditioned conjugate gradients in the <.,.>_h inner product.
 * `guess` seeds the iteration when given. Throws NumericalError on NaN or
 * when the tolerance is not met within max_iter.
 */
SolveResult pcg_solve(const SystemOperator& op, const MeshFunction& rhs,
                      const PcgOptions& options = {}, const MeshFunction* guess = nullptr);

} // namespace sg
