#include "sg/grid.hpp"

#include "sg/operators.hpp"

#include <algorithm>
#include <cmath>

namespace sg {

Grid::Grid(double x_lo, double x_hi, double y_lo, double y_hi, std::size_t n1, std::size_t n2,
           Boundary boundary)
    : x_lo_(x_lo), x_hi_(x_hi), y_lo_(y_lo), y_hi_(y_hi), n1_(n1), n2_(n2), boundary_(boundary)
{
    if (!std::isfinite(x_lo) || !std::isfinite(x_hi) || !(x_hi > x_lo))
        throw ConfigError("grid: x extent must be finite and positive");
    if (!std::isfinite(y_lo) || !std::isfinite(y_hi) || !(y_hi > y_lo))
        throw ConfigError("grid: y extent must be finite and positive");
    if (n1 < 2)
        throw ConfigError("grid: n1 must be at least 2");
    if (n2 != 1 && n2 < 2)
        throw ConfigError("grid: n2 must be 1 (1D mode) or at least 2");

    h1_ = (x_hi - x_lo) / static_cast<double>(n1);
    h2_ = (y_hi - y_lo) / static_cast<double>(n2);

    const bool dirichlet = boundary == Boundary::DirichletExact;
    nodes1_ = dirichlet ? n1 + 1 : n1;
    nodes2_ = (dirichlet && n2 > 1) ? n2 + 1 : n2;

    if (dirichlet) {
        boundary_mask_.assign(nodes1_ * nodes2_, false);
        for (std::size_t j2 = 0; j2 < nodes2_; ++j2) {
            for (std::size_t j1 = 0; j1 < nodes1_; ++j1) {
                const bool edge_x = j1 == 0 || j1 + 1 == nodes1_;
                const bool edge_y = n2 > 1 && (j2 == 0 || j2 + 1 == nodes2_);
                boundary_mask_[index(j1, j2)] = edge_x || edge_y;
            }
        }
    }
}

bool Grid::operator==(const Grid& other) const
{
    return x_lo_ == other.x_lo_ && x_hi_ == other.x_hi_ && y_lo_ == other.y_lo_ &&
           y_hi_ == other.y_hi_ && n1_ == other.n1_ && n2_ == other.n2_ &&
           boundary_ == other.boundary_;
}

GridPtr make_grid(double x_lo, double x_hi, double y_lo, double y_hi, std::size_t n1,
                  std::size_t n2, Boundary boundary)
{
    return std::make_shared<const Grid>(x_lo, x_hi, y_lo, y_hi, n1, n2, boundary);
}

GridPtr make_grid_1d(double x_lo, double x_hi, std::size_t n, Boundary boundary)
{
    return make_grid(x_lo, x_hi, 0.0, 1.0, n, 1, boundary);
}

MeshFunction::MeshFunction(GridPtr grid, double fill) : grid_(std::move(grid))
{
    if (!grid_)
        throw ConfigError("mesh function: null grid");
    if (!std::isfinite(fill))
        throw ConfigError("mesh function: non-finite fill value");
    values_.assign(grid_->size(), fill);
}

MeshFunction::MeshFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values))
{
    if (!grid_)
        throw ConfigError("mesh function: null grid");
    if (values_.size() != grid_->size())
        throw ConfigError("mesh function: value count does not match grid size");
    require_finite("mesh function");
}

bool MeshFunction::all_finite() const
{
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

void MeshFunction::require_finite(const std::string& what) const
{
    if (!all_finite())
        throw NumericalError(what + ": non-finite value encountered");
}

bool same_grid(const Grid& a, const Grid& b) { return &a == &b || a == b; }

void require_same_grid(const MeshFunction& a, const MeshFunction& b)
{
    if (!a.grid_ptr() || !b.grid_ptr() || !same_grid(a.grid(), b.grid()))
        throw ConfigError("mesh functions live on different grids");
}

double inner(const MeshFunction& u, const MeshFunction& v)
{
    require_same_grid(u, v);
    double sum = 0.0;
    const auto a = u.values();
    const auto b = v.values();
    for (std::size_t i = 0; i < a.size(); ++i)
        sum += a[i] * b[i];
    return u.grid().cell_measure() * sum;
}

double l2(const MeshFunction& u) { return std::sqrt(inner(u, u)); }

double linf(const MeshFunction& u)
{
    double m = 0.0;
    for (double x : u.values())
        m = std::max(m, std::abs(x));
    return m;
}

double h1_norm(const MeshFunction& u)
{
    const Stencil stencil(u.grid_ptr());
    const double dx = l2(delta_x(stencil, u));
    const double dy = l2(delta_y(stencil, u));
    const double base = l2(u);
    return std::sqrt(base * base + dx * dx + dy * dy);
}

} // namespace sg
