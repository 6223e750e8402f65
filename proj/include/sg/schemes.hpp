#pragma once

#include "sg/linear_solver.hpp"
#include "sg/problems.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>

namespace sg {

/**
 * One time level of the quadratized system.
 *
 * r is initialised to sqrt(2 - cos u) and afterwards evolved by the scheme,
 * never recomputed from u. u_prev is U^{n-1} and is absent only at n = 0.
 */
struct SchemeState {
    double t = 0.0;
    std::size_t step = 0;
    std::optional<MeshFunction> u_prev;
    MeshFunction u;
    MeshFunction v;
    MeshFunction r;
};

struct TimeGrid {
    double tau = 0.0;
    std::size_t steps = 0;

    double final_time() const { return tau * static_cast<double>(steps); }
};

/// tau must divide T to round-off.
TimeGrid make_time_grid(double final_time, double tau);

enum class Scheme { LiLeps, EpFds };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

/// Solver knobs shared by both schemes.
struct SolverSettings {
    double pcg_tol = 1e-14;
    std::size_t pcg_max_iter = 0; ///< 0: 10 sqrt(nodes)
    double fp_tol = 1e-14;        ///< fixed-point tolerance (relative to max(1, |U|_inf))
    std::size_t fp_max = 100;
};

/// Linear and nonlinear work spent on one step.
struct StepStats {
    std::size_t pcg_iterations = 0;
    std::size_t pcg_solves = 0;
    std::size_t max_pcg_iterations = 0; ///< worst single solve
    std::size_t fixed_point_iterations = 0;
    double max_linear_residual = 0.0;
};

/**
 * Everything a step needs besides the state: the stencil, solver settings
 * and, on DirichletExact grids, the boundary data u(x, y, t).
 */
struct StepContext {
    std::shared_ptr<const Stencil> stencil;
    SolverSettings settings;
    SpaceTimeFn boundary;

    explicit StepContext(GridPtr grid, SolverSettings s = {}, SpaceTimeFn boundary_fn = {});
    const Grid& grid() const { return stencil->grid(); }
};

/// u = f, v = g, r = sqrt(2 - cos f) sampled at the nodes; t = 0.
SchemeState init_state(const Problem& problem, GridPtr grid);

/**
 * Right-hand side of A U^{n+1} = rhs for one linearly implicit step with
 * nonlinearity weights d, including boundary data at t + tau.
 */
MeshFunction li_leps_rhs(const StepContext& ctx, const SchemeState& s, const MeshFunction& d,
                         double tau);

/// Regular three-level step, d = b((3U^n - U^{n-1}) / 2). Needs u_prev.
SchemeState li_leps_step(const StepContext& ctx, const SchemeState& s, double tau,
                         StepStats* stats = nullptr);

/// Bootstrap from level 0 with d = b(U^0). Rejects states that already have u_prev.
SchemeState li_leps_first_step(const StepContext& ctx, const SchemeState& s, double tau,
                               StepStats* stats = nullptr);

/**
 * Fully implicit average-vector-field step
 *   (U^{n+1} - U^n)/tau = (V^{n+1} + V^n)/2,
 *   (V^{n+1} - V^n)/tau = Lap (U^{n+1} + U^n)/2 - (cos U^n - cos U^{n+1}) / (U^{n+1} - U^n),
 * solved by fixed-point iteration with one PCG solve per sweep. The
 * difference quotient is replaced by sin of the midpoint where
 * |U^{n+1} - U^n| < 1e-8. r is reset to sqrt(2 - cos U^{n+1}).
 */
SchemeState ep_fds_step(const StepContext& ctx, const SchemeState& s, double tau,
                        StepStats* stats = nullptr);

struct Recorder {
    std::size_t every = 1;
    std::function<void(const SchemeState&)> callback;
};

struct RunStats {
    std::size_t steps = 0;
    std::size_t pcg_iterations = 0;
    std::size_t pcg_solves = 0;
    std::size_t max_pcg_iterations = 0;
    std::size_t fixed_point_iterations = 0;
    double max_linear_residual = 0.0;
    double stepping_seconds = 0.0;
};

struct RunResult {
    SchemeState final_state;
    RunStats stats;
};

/**
 * Runs `scheme` from the problem's initial data for time.steps steps.
 * LI-LEPS bootstraps its first step; recorders see the state at every
 * level n with n % every == 0. Throws on solver failure; the recorders have
 * by then seen every level reached.
 */
RunResult run(const Problem& problem, Scheme scheme, GridPtr grid, const TimeGrid& time,
              std::span<const Recorder> recorders = {}, const SolverSettings& settings = {});

} // namespace sg
