#include "sg/operators.hpp"

#include <cmath>
#include <limits>

namespace sg {

Stencil::Stencil(GridPtr grid) : grid_(std::move(grid))
{
    if (!grid_)
        throw ConfigError("stencil: null grid");
    const Grid& g = *grid_;
    if (g.size() > std::numeric_limits<std::uint32_t>::max())
        throw ConfigError("stencil: grid too large");

    const std::size_t m1 = g.nodes1();
    const std::size_t m2 = g.nodes2();
    const bool periodic = g.boundary() == Boundary::Periodic;

    east_.resize(g.size());
    west_.resize(g.size());
    north_.resize(g.size());
    south_.resize(g.size());

    auto neighbour = [periodic](std::size_t j, std::ptrdiff_t step, std::size_t m) {
        const auto t = static_cast<std::ptrdiff_t>(j) + step;
        if (periodic)
            return wrap(t, m);
        if (t < 0 || t >= static_cast<std::ptrdiff_t>(m))
            return j;
        return static_cast<std::size_t>(t);
    };

    for (std::size_t j2 = 0; j2 < m2; ++j2) {
        for (std::size_t j1 = 0; j1 < m1; ++j1) {
            const std::size_t i = g.index(j1, j2);
            east_[i] = static_cast<std::uint32_t>(g.index(neighbour(j1, 1, m1), j2));
            west_[i] = static_cast<std::uint32_t>(g.index(neighbour(j1, -1, m1), j2));
            if (g.is_1d()) {
                north_[i] = south_[i] = static_cast<std::uint32_t>(i);
            } else {
                north_[i] = static_cast<std::uint32_t>(g.index(j1, neighbour(j2, 1, m2)));
                south_[i] = static_cast<std::uint32_t>(g.index(j1, neighbour(j2, -1, m2)));
            }
        }
    }

    inv_h1_sq_ = 1.0 / (g.h1() * g.h1());
    inv_h2_sq_ = g.is_1d() ? 0.0 : 1.0 / (g.h2() * g.h2());
}

void Stencil::require_on_grid(const MeshFunction& u) const
{
    if (!u.grid_ptr() || !same_grid(u.grid(), *grid_))
        throw ConfigError("mesh function is not on the stencil's grid");
}

MeshFunction delta_x(const Stencil& s, const MeshFunction& u)
{
    s.require_on_grid(u);
    MeshFunction out(u.grid_ptr());
    const double inv_h = 1.0 / s.grid().h1();
    for (std::size_t i = 0; i < u.size(); ++i)
        out[i] = (u[s.east(i)] - u[i]) * inv_h;
    return out;
}

MeshFunction delta_y(const Stencil& s, const MeshFunction& u)
{
    s.require_on_grid(u);
    MeshFunction out(u.grid_ptr());
    if (s.grid().is_1d())
        return out;
    const double inv_h = 1.0 / s.grid().h2();
    for (std::size_t i = 0; i < u.size(); ++i)
        out[i] = (u[s.north(i)] - u[i]) * inv_h;
    return out;
}

MeshFunction average_x(const Stencil& s, const MeshFunction& u)
{
    s.require_on_grid(u);
    MeshFunction out(u.grid_ptr());
    for (std::size_t i = 0; i < u.size(); ++i)
        out[i] = 0.5 * (u[s.east(i)] + u[i]);
    return out;
}

MeshFunction average_y(const Stencil& s, const MeshFunction& u)
{
    s.require_on_grid(u);
    MeshFunction out(u.grid_ptr());
    for (std::size_t i = 0; i < u.size(); ++i)
        out[i] = 0.5 * (u[s.north(i)] + u[i]);
    return out;
}

MeshFunction laplacian(const Stencil& s, const MeshFunction& u)
{
    s.require_on_grid(u);
    const Grid& g = s.grid();
    MeshFunction out(u.grid_ptr());
    const double cx = s.inv_h1_sq();
    const double cy = s.inv_h2_sq();
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (g.is_boundary(i))
            continue;
        const double c = u[i];
        out[i] = (u[s.east(i)] + u[s.west(i)] - 2.0 * c) * cx +
                 (u[s.north(i)] + u[s.south(i)] - 2.0 * c) * cy;
    }
    return out;
}

void laplacian_homogeneous_into(const Stencil& s, std::span<const double> u, std::span<double> out)
{
    const Grid& g = s.grid();
    const double cx = s.inv_h1_sq();
    const double cy = s.inv_h2_sq();
    if (g.boundary() == Boundary::Periodic) {
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double c = u[i];
            out[i] = (u[s.east(i)] + u[s.west(i)] - 2.0 * c) * cx +
                     (u[s.north(i)] + u[s.south(i)] - 2.0 * c) * cy;
        }
        return;
    }
    auto read = [&](std::uint32_t j) { return g.is_boundary(j) ? 0.0 : u[j]; };
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (g.is_boundary(i)) {
            out[i] = 0.0;
            continue;
        }
        const double c = u[i];
        out[i] = (read(s.east(i)) + read(s.west(i)) - 2.0 * c) * cx +
                 (read(s.north(i)) + read(s.south(i)) - 2.0 * c) * cy;
    }
}

MeshFunction laplacian_homogeneous(const Stencil& s, const MeshFunction& u)
{
    s.require_on_grid(u);
    MeshFunction out(u.grid_ptr());
    laplacian_homogeneous_into(s, u.values(), out.data());
    return out;
}

namespace {

void require_finite_arg(double x)
{
    if (!std::isfinite(x))
        throw ConfigError("b: non-finite argument");
}

} // namespace

double b_eval(double x)
{
    require_finite_arg(x);
    return std::sin(x) / std::sqrt(2.0 - std::cos(x));
}

double b_prime(double x)
{
    require_finite_arg(x);
    const double s = std::sin(x);
    const double q = 2.0 - std::cos(x);
    return std::cos(x) / std::sqrt(q) - s * s / (2.0 * q * std::sqrt(q));
}

double b_double_prime(double x)
{
    require_finite_arg(x);
    const double s = std::sin(x);
    const double q = 2.0 - std::cos(x);
    const double q32 = q * std::sqrt(q);
    return -s / std::sqrt(q) - 3.0 * std::sin(2.0 * x) / (4.0 * q32) +
           3.0 * s * s * s / (4.0 * q32 * q);
}

MeshFunction extrapolate_half(const MeshFunction& u_n, const MeshFunction& u_nm1)
{
    require_same_grid(u_n, u_nm1);
    MeshFunction out(u_n.grid_ptr());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = 0.5 * (3.0 * u_n[i] - u_nm1[i]);
    return out;
}

MeshFunction time_average(const MeshFunction& u_np1, const MeshFunction& u_n)
{
    require_same_grid(u_np1, u_n);
    MeshFunction out(u_n.grid_ptr());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = 0.5 * (u_np1[i] + u_n[i]);
    return out;
}

MeshFunction b_field(const MeshFunction& u)
{
    MeshFunction out(u.grid_ptr());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = b_eval(u[i]);
    return out;
}

} // namespace sg
