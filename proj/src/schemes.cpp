#include "sg/schemes.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace sg {

TimeGrid make_time_grid(double final_time, double tau)
{
    if (!std::isfinite(tau) || !(tau > 0.0))
        throw ConfigError("time step must be positive");
    if (!std::isfinite(final_time) || final_time < 0.0)
        throw ConfigError("final time must be non-negative");
    const double m = std::round(final_time / tau);
    if (std::abs(m * tau - final_time) > 1e-9 * std::max(1.0, final_time))
        throw ConfigError("time step does not divide the final time");
    return {tau, static_cast<std::size_t>(m)};
}

std::string scheme_name(Scheme s) { return s == Scheme::LiLeps ? "li-leps" : "ep-fds"; }

Scheme scheme_from_name(const std::string& name)
{
    if (name == "li-leps")
        return Scheme::LiLeps;
    if (name == "ep-fds")
        return Scheme::EpFds;
    throw ConfigError("unknown scheme '" + name + "'");
}

StepContext::StepContext(GridPtr grid, SolverSettings s, SpaceTimeFn boundary_fn)
    : stencil(std::make_shared<const Stencil>(std::move(grid))), settings(s),
      boundary(std::move(boundary_fn))
{
    if (stencil->grid().boundary() == Boundary::DirichletExact && !boundary)
        throw ConfigError("DirichletExact grid needs boundary data");
}

SchemeState init_state(const Problem& problem, GridPtr grid)
{
    if (!grid)
        throw ConfigError("init_state: null grid");
    const Grid& g = *grid;
    if (g.x_lo() != problem.x_lo || g.x_hi() != problem.x_hi || g.boundary() != problem.boundary ||
        g.is_1d() != problem.one_d ||
        (!problem.one_d && (g.y_lo() != problem.y_lo || g.y_hi() != problem.y_hi)))
        throw ConfigError("init_state: grid does not cover the problem domain");

    std::vector<double> u(g.size()), v(g.size()), r(g.size());
    for (std::size_t j2 = 0; j2 < g.nodes2(); ++j2) {
        const double y = problem.one_d ? 0.0 : g.y(j2);
        for (std::size_t j1 = 0; j1 < g.nodes1(); ++j1) {
            const std::size_t i = g.index(j1, j2);
            u[i] = problem.f(g.x(j1), y);
            v[i] = problem.g(g.x(j1), y);
            r[i] = std::sqrt(2.0 - std::cos(u[i]));
        }
    }
    SchemeState s;
    try {
        s.u = MeshFunction(grid, std::move(u));
        s.v = MeshFunction(grid, std::move(v));
        s.r = MeshFunction(grid, std::move(r));
    } catch (const NumericalError& e) {
        throw ConfigError(std::string("init_state: initial data is not finite: ") + e.what());
    }
    return s;
}

namespace {

/// Field that is zero inside and carries u(x, y, t) on the outer ring.
MeshFunction boundary_field(const StepContext& ctx, double t)
{
    const Grid& g = ctx.grid();
    MeshFunction out(ctx.stencil->grid_ptr());
    for (std::size_t j2 = 0; j2 < g.nodes2(); ++j2) {
        const double y = g.is_1d() ? 0.0 : g.y(j2);
        for (std::size_t j1 = 0; j1 < g.nodes1(); ++j1) {
            const std::size_t i = g.index(j1, j2);
            if (g.is_boundary(i))
                out[i] = ctx.boundary(g.x(j1), y, t);
        }
    }
    return out;
}

/// Boundary rows of the right-hand side and their coupling into the interior.
void add_boundary_data(const StepContext& ctx, MeshFunction& rhs, double t_next, double tau)
{
    const Grid& g = ctx.grid();
    if (g.boundary() != Boundary::DirichletExact)
        return;
    const MeshFunction gb = boundary_field(ctx, t_next);
    const MeshFunction lap_gb = laplacian(*ctx.stencil, gb);
    const double a = 0.25 * tau * tau;
    for (std::size_t i = 0; i < g.size(); ++i)
        rhs[i] = g.is_boundary(i) ? gb[i] : rhs[i] + a * lap_gb[i];
}

void require_step(const SchemeState& s, double tau, const Stencil& st)
{
    if (!std::isfinite(tau) || !(tau > 0.0))
        throw ConfigError("step: tau must be positive");
    st.require_on_grid(s.u);
    st.require_on_grid(s.v);
    st.require_on_grid(s.r);
}

void accumulate(StepStats* stats, const SolveReport& rep)
{
    if (!stats)
        return;
    stats->pcg_iterations += rep.iterations;
    stats->pcg_solves += 1;
    stats->max_pcg_iterations = std::max(stats->max_pcg_iterations, rep.iterations);
    stats->max_linear_residual = std::max(stats->max_linear_residual, rep.final_residual);
}

PcgOptions pcg_options(const StepContext& ctx)
{
    PcgOptions o;
    o.tol = ctx.settings.pcg_tol;
    o.max_iter = ctx.settings.pcg_max_iter;
    return o;
}

SchemeState linearly_implicit_step(const StepContext& ctx, const SchemeState& s,
                                   const MeshFunction& d, double tau, StepStats* stats)
{
    const MeshFunction rhs = li_leps_rhs(ctx, s, d, tau);
    const SystemOperator op(ctx.stencil, tau, d);
    SolveResult sol = pcg_solve(op, rhs, pcg_options(ctx), &s.u);
    accumulate(stats, sol.report);

    SchemeState next;
    next.t = s.t + tau;
    next.step = s.step + 1;
    next.u_prev = s.u;
    next.u = std::move(sol.x);
    next.v = MeshFunction(s.u.grid_ptr());
    next.r = MeshFunction(s.u.grid_ptr());
    for (std::size_t i = 0; i < s.u.size(); ++i) {
        const double du = next.u[i] - s.u[i];
        next.v[i] = 2.0 * du / tau - s.v[i];
        next.r[i] = s.r[i] + 0.5 * d[i] * du;
    }
    next.v.require_finite("li-leps step");
    next.r.require_finite("li-leps step");
    return next;
}

} // namespace

MeshFunction li_leps_rhs(const StepContext& ctx, const SchemeState& s, const MeshFunction& d,
                         double tau)
{
    const Stencil& st = *ctx.stencil;
    st.require_on_grid(d);
    const MeshFunction lap_u = laplacian(st, s.u);
    MeshFunction rhs(s.u.grid_ptr());
    const double a = 0.25 * tau * tau;
    const double c = 0.125 * tau * tau;
    const double e = 0.5 * tau * tau;
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        const double di = d[i];
        rhs[i] = s.u[i] + tau * s.v[i] + a * lap_u[i] + c * di * di * s.u[i] - e * di * s.r[i];
    }
    add_boundary_data(ctx, rhs, s.t + tau, tau);
    return rhs;
}

SchemeState li_leps_step(const StepContext& ctx, const SchemeState& s, double tau, StepStats* stats)
{
    require_step(s, tau, *ctx.stencil);
    if (!s.u_prev)
        throw ConfigError("li_leps_step: U^{n-1} missing, bootstrap with li_leps_first_step");
    const MeshFunction d = b_field(extrapolate_half(s.u, *s.u_prev));
    return linearly_implicit_step(ctx, s, d, tau, stats);
}

SchemeState li_leps_first_step(const StepContext& ctx, const SchemeState& s, double tau,
                               StepStats* stats)
{
    require_step(s, tau, *ctx.stencil);
    if (s.u_prev)
        throw ConfigError("li_leps_first_step: state is past level 0");
    return linearly_implicit_step(ctx, s, b_field(s.u), tau, stats);
}

SchemeState ep_fds_step(const StepContext& ctx, const SchemeState& s, double tau, StepStats* stats)
{
    require_step(s, tau, *ctx.stencil);
    const Stencil& st = *ctx.stencil;
    const Grid& g = st.grid();
    const std::size_t n = g.size();

    // Constant part: U + tau V + (tau^2/4) Lap U (+ boundary data).
    const MeshFunction lap_u = laplacian(st, s.u);
    MeshFunction base(s.u.grid_ptr());
    const double a = 0.25 * tau * tau;
    for (std::size_t i = 0; i < n; ++i)
        base[i] = s.u[i] + tau * s.v[i] + a * lap_u[i];
    add_boundary_data(ctx, base, s.t + tau, tau);

    const SystemOperator op(ctx.stencil, tau, MeshFunction(s.u.grid_ptr()));
    const PcgOptions opts = pcg_options(ctx);

    MeshFunction w(s.u.grid_ptr());
    for (std::size_t i = 0; i < n; ++i)
        w[i] = s.u[i] + tau * s.v[i];

    MeshFunction rhs(s.u.grid_ptr());
    const double e = 0.5 * tau * tau;
    double prev_delta = INFINITY;
    bool converged = false;
    for (std::size_t k = 0; k < ctx.settings.fp_max; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (g.is_boundary(i)) {
                rhs[i] = base[i];
                continue;
            }
            const double du = w[i] - s.u[i];
            const double q = std::abs(du) < 1e-8 ? std::sin(0.5 * (w[i] + s.u[i]))
                                                 : (std::cos(s.u[i]) - std::cos(w[i])) / du;
            rhs[i] = base[i] - e * q;
        }
        SolveResult sol = pcg_solve(op, rhs, opts, &w);
        accumulate(stats, sol.report);
        if (stats)
            stats->fixed_point_iterations += 1;

        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            delta = std::max(delta, std::abs(sol.x[i] - w[i]));
        w = std::move(sol.x);
        const double threshold = ctx.settings.fp_tol * std::max(1.0, linf(w));
        // Past the contraction phase the update sits at the linear solver's
        // noise floor; accept that floor if it is within 100x of the target.
        if (delta <= threshold || (k >= 2 && delta >= prev_delta && delta <= 100.0 * threshold)) {
            converged = true;
            break;
        }
        prev_delta = delta;
    }
    if (!converged)
        throw NumericalError("ep-fds: fixed-point iteration did not converge");

    SchemeState next;
    next.t = s.t + tau;
    next.step = s.step + 1;
    next.u_prev = s.u;
    next.v = MeshFunction(s.u.grid_ptr());
    next.r = MeshFunction(s.u.grid_ptr());
    for (std::size_t i = 0; i < n; ++i) {
        next.v[i] = 2.0 * (w[i] - s.u[i]) / tau - s.v[i];
        next.r[i] = std::sqrt(2.0 - std::cos(w[i]));
    }
    next.u = std::move(w);
    next.u.require_finite("ep-fds step");
    next.v.require_finite("ep-fds step");
    return next;
}

RunResult run(const Problem& problem, Scheme scheme, GridPtr grid, const TimeGrid& time,
              std::span<const Recorder> recorders, const SolverSettings& settings)
{
    for (const Recorder& rec : recorders)
        if (rec.every == 0)
            throw ConfigError("recorder cadence must be at least 1");

    const StepContext ctx(grid, settings, problem.exact);
    RunResult result{init_state(problem, grid), {}};
    SchemeState& state = result.final_state;
    RunStats& rs = result.stats;

    auto notify = [&](const SchemeState& s) {
        for (const Recorder& rec : recorders)
            if (s.step % rec.every == 0 && rec.callback)
                rec.callback(s);
    };
    notify(state);

    using clock = std::chrono::steady_clock;
    for (std::size_t n = 0; n < time.steps; ++n) {
        StepStats st;
        const auto t0 = clock::now();
        SchemeState next;
        if (scheme == Scheme::EpFds)
            next = ep_fds_step(ctx, state, time.tau, &st);
        else if (n == 0)
            next = li_leps_first_step(ctx, state, time.tau, &st);
        else
            next = li_leps_step(ctx, state, time.tau, &st);
        // Pin t to n tau so recorders see exact level times.
        next.t = static_cast<double>(n + 1) * time.tau;
        rs.stepping_seconds += std::chrono::duration<double>(clock::now() - t0).count();

        rs.steps += 1;
        rs.pcg_iterations += st.pcg_iterations;
        rs.pcg_solves += st.pcg_solves;
        rs.fixed_point_iterations += st.fixed_point_iterations;
        rs.max_linear_residual = std::max(rs.max_linear_residual, st.max_linear_residual);
        rs.max_pcg_iterations = std::max(rs.max_pcg_iterations, st.max_pcg_iterations);
        state = std::move(next);
        notify(state);
    }
    return result;
}

} // namespace sg
