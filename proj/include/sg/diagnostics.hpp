#pragma once

#include "sg/problems.hpp"
#include "sg/schemes.hpp"

#include <span>
#include <vector>

namespace sg {

/// Which potential term enters the energy density.
enum class EnergyForm {
    Modified, ///< R^2, the quadratized energy the linearly implicit scheme conserves
    Original, ///< 1 - cos U
};

/// 1/2 V^2 + 1/2 (dx U)^2 + 1/2 (dy U)^2 + potential, per node.
MeshFunction local_energy_density(const Stencil& st, const SchemeState& s,
                                  EnergyForm form = EnergyForm::Modified);

/**
 * Per-node residual of the discrete local energy law between two
 * consecutive levels:
 *
 *   dt(density) - dx(At dx U[j1-1] * At V) - dy(At dy U[j2-1] * At V).
 *
 * Periodic grids only. With EnergyForm::Modified this vanishes to round-off
 * for the linearly implicit scheme; with EnergyForm::Original it does not.
 */
MeshFunction local_law_residual(const Stencil& st, const SchemeState& s_n, const SchemeState& s_np1,
                                double tau, EnergyForm form = EnergyForm::Modified);

/// h1 h2 sum of the modified density (conserved by LI-LEPS on periodic grids).
double global_energy_modified(const Stencil& st, const SchemeState& s);
/// h1 h2 sum with 1 - cos U in place of R^2.
double global_energy_original(const Stencil& st, const SchemeState& s);

struct EnergyRecord {
    double t = 0.0;
    double e_modified = 0.0;
    double e_original = 0.0;
    double deviation = 0.0; ///< |E^n - E^0| / |E^0| of the modified energy
};

EnergyRecord energy_record(const Stencil& st, const SchemeState& s, double e_modified_0);

/// Errors of a computed level against the exact solution at s.t.
struct ErrorReport {
    double l2_err = 0.0;
    double linf_err = 0.0;
    double h1_err = 0.0;
    double v_l2_err = 0.0; ///< NaN when the problem has no exact time derivative
    double r_l2_err = 0.0;
};

ErrorReport error_vs_exact(const SchemeState& s, const Problem& problem);

struct RefinementSample {
    double h = 0.0;
    double tau = 0.0;
    double error = 0.0;
};

/// log2(err[k-1] / err[k]); requires each (h, tau) to halve the previous one.
std::vector<double> convergence_orders(std::span<const RefinementSample> rows);

} // namespace sg
