#include "sg/diagnostics.hpp"

#include <cmath>
#include <limits>

namespace sg {

namespace {

double potential(EnergyForm form, double u, double r)
{
    return form == EnergyForm::Modified ? r * r : 1.0 - std::cos(u);
}

void require_periodic(const Stencil& st, const char* what)
{
    if (st.grid().boundary() != Boundary::Periodic)
        throw ConfigError(std::string(what) + ": periodic grid required");
}

double global_energy(const Stencil& st, const SchemeState& s, EnergyForm form)
{
    const MeshFunction dens = local_energy_density(st, s, form);
    double sum = 0.0;
    for (double x : dens.values())
        sum += x;
    return st.grid().cell_measure() * sum;
}

} // namespace

MeshFunction local_energy_density(const Stencil& st, const SchemeState& s, EnergyForm form)
{
    st.require_on_grid(s.u);
    st.require_on_grid(s.v);
    st.require_on_grid(s.r);
    const MeshFunction ux = delta_x(st, s.u);
    const MeshFunction uy = delta_y(st, s.u);
    MeshFunction out(s.u.grid_ptr());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = 0.5 * s.v[i] * s.v[i] + 0.5 * ux[i] * ux[i] + 0.5 * uy[i] * uy[i] +
                 potential(form, s.u[i], s.r[i]);
    return out;
}

MeshFunction local_law_residual(const Stencil& st, const SchemeState& s_n, const SchemeState& s_np1,
                                double tau, EnergyForm form)
{
    require_periodic(st, "local_law_residual");
    if (!(tau > 0.0))
        throw ConfigError("local_law_residual: tau must be positive");
    if (s_np1.step != s_n.step + 1)
        throw ConfigError("local_law_residual: states are not consecutive levels");

    const Grid& g = st.grid();
    const MeshFunction e0 = local_energy_density(st, s_n, form);
    const MeshFunction e1 = local_energy_density(st, s_np1, form);
    const MeshFunction ux = time_average(delta_x(st, s_np1.u), delta_x(st, s_n.u));
    const MeshFunction uy = time_average(delta_y(st, s_np1.u), delta_y(st, s_n.u));
    const MeshFunction vbar = time_average(s_np1.v, s_n.v);

    // Flux at node j pairs At dx U[j-1] with At V[j]; dx of it is the
    // forward difference of that product.
    MeshFunction fx(s_n.u.grid_ptr());
    MeshFunction fy(s_n.u.grid_ptr());
    for (std::size_t i = 0; i < fx.size(); ++i) {
        fx[i] = ux[st.west(i)] * vbar[i];
        fy[i] = uy[st.south(i)] * vbar[i];
    }
    const MeshFunction div_x = delta_x(st, fx);
    const MeshFunction div_y = delta_y(st, fy);

    MeshFunction res(s_n.u.grid_ptr());
    for (std::size_t i = 0; i < res.size(); ++i)
        res[i] = (e1[i] - e0[i]) / tau - div_x[i] - (g.is_1d() ? 0.0 : div_y[i]);
    return res;
}

double global_energy_modified(const Stencil& st, const SchemeState& s)
{
    return global_energy(st, s, EnergyForm::Modified);
}

double global_energy_original(const Stencil& st, const SchemeState& s)
{
    return global_energy(st, s, EnergyForm::Original);
}

EnergyRecord energy_record(const Stencil& st, const SchemeState& s, double e_modified_0)
{
    EnergyRecord rec;
    rec.t = s.t;
    rec.e_modified = global_energy_modified(st, s);
    rec.e_original = global_energy_original(st, s);
    rec.deviation = std::abs(rec.e_modified - e_modified_0) / std::abs(e_modified_0);
    return rec;
}

ErrorReport error_vs_exact(const SchemeState& s, const Problem& problem)
{
    if (!problem.has_exact())
        throw ConfigError("problem '" + problem.name + "' has no exact solution");
    const Grid& g = s.u.grid();
    MeshFunction eu(s.u.grid_ptr());
    MeshFunction ev(s.u.grid_ptr());
    MeshFunction er(s.u.grid_ptr());
    for (std::size_t j2 = 0; j2 < g.nodes2(); ++j2) {
        const double y = g.is_1d() ? 0.0 : g.y(j2);
        for (std::size_t j1 = 0; j1 < g.nodes1(); ++j1) {
            const std::size_t i = g.index(j1, j2);
            const double u = problem.exact(g.x(j1), y, s.t);
            eu[i] = s.u[i] - u;
            er[i] = s.r[i] - std::sqrt(2.0 - std::cos(u));
            if (problem.exact_dt)
                ev[i] = s.v[i] - problem.exact_dt(g.x(j1), y, s.t);
        }
    }
    ErrorReport rep;
    rep.l2_err = l2(eu);
    rep.linf_err = linf(eu);
    rep.h1_err = h1_norm(eu);
    rep.v_l2_err = problem.exact_dt ? l2(ev) : std::numeric_limits<double>::quiet_NaN();
    rep.r_l2_err = l2(er);
    return rep;
}

std::vector<double> convergence_orders(std::span<const RefinementSample> rows)
{
    if (rows.size() < 2)
        throw ConfigError("convergence_orders: need at least two rows");
    std::vector<double> orders;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const auto& a = rows[k - 1];
        const auto& b = rows[k];
        if (std::abs(a.h / b.h - 2.0) > 1e-9 || std::abs(a.tau / b.tau - 2.0) > 1e-9)
            throw ConfigError("convergence_orders: (h, tau) must halve between rows");
        if (!(a.error > 0.0) || !(b.error > 0.0))
            throw ConfigError("convergence_orders: errors must be positive");
        orders.push_back(std::log2(a.error / b.error));
    }
    return orders;
}

} // namespace sg
