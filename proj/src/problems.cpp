#include "sg/problems.hpp"

#include <array>
#include <cmath>

namespace sg {

namespace {

double sech(double x) { return 1.0 / std::cosh(x); }

} // namespace

Problem double_pole_1d()
{
    Problem p;
    p.name = "double-pole-1d";
    p.x_lo = -20.0;
    p.x_hi = 20.0;
    p.one_d = true;
    p.boundary = Boundary::Periodic;
    p.f = [](double, double) { return 0.0; };
    p.g = [](double x, double) { return 4.0 * sech(x); };
    p.exact = [](double x, double, double t) { return 4.0 * std::atan(t * sech(x)); };
    p.exact_dt = [](double x, double, double t) {
        const double s = sech(x);
        return 4.0 * s / (1.0 + t * t * s * s);
    };
    return p;
}

Problem line_kink_2d()
{
    Problem p;
    p.name = "line-kink-2d";
    p.x_lo = p.y_lo = -7.0;
    p.x_hi = p.y_hi = 7.0;
    p.boundary = Boundary::DirichletExact;
    p.f = [](double x, double y) { return 4.0 * std::atan(std::exp(x + y)); };
    p.g = [](double x, double y) {
        return -4.0 * std::exp(x + y) / (1.0 + std::exp(2.0 * x + 2.0 * y));
    };
    p.exact = [](double x, double y, double t) { return 4.0 * std::atan(std::exp(x + y - t)); };
    p.exact_dt = [](double x, double y, double t) {
        const double e = std::exp(x + y - t);
        return -4.0 * e / (1.0 + e * e);
    };
    p.display = DisplayTransform::SinHalf;
    return p;
}

Problem circular_ring()
{
    Problem p;
    p.name = "ring";
    p.x_lo = p.y_lo = -14.0;
    p.x_hi = p.y_hi = 14.0;
    p.f = [](double x, double y) { return 4.0 * std::atan(std::exp(3.0 - std::hypot(x, y))); };
    p.g = [](double, double) { return 0.0; };
    p.display = DisplayTransform::SinHalf;
    return p;
}

Problem elliptical_breather()
{
    Problem p;
    p.name = "breather";
    p.x_lo = p.y_lo = -7.0;
    p.x_hi = p.y_hi = 7.0;
    p.f = [](double x, double y) {
        const double a = x - y;
        const double b = x + y;
        return 4.0 * std::atan(2.0 * sech(0.866 * std::sqrt(a * a / 3.0 + b * b / 2.0)));
    };
    p.g = [](double, double) { return 0.0; };
    p.display = DisplayTransform::SinHalf;
    return p;
}

namespace {

double collision_phase(double x, double y)
{
    return (4.0 - std::hypot(x + 3.0, y + 7.0)) / 0.436;
}

void set_collision_data(Problem& p)
{
    p.f = [](double x, double y) { return 4.0 * std::atan(std::exp(collision_phase(x, y))); };
    p.g = [](double x, double y) { return 4.13 * sech(collision_phase(x, y)); };
    p.display = DisplayTransform::SinHalf;
}

} // namespace

Problem two_ring_collision()
{
    Problem p;
    p.name = "collide2";
    p.x_lo = -30.0;
    p.x_hi = 10.0;
    p.y_lo = -21.0;
    p.y_hi = 7.0;
    set_collision_data(p);
    p.mirror_x = -10.0;
    p.mirror_y = -7.0;
    return p;
}

Problem four_ring_collision()
{
    Problem p;
    p.name = "collide4";
    p.x_lo = p.y_lo = -30.0;
    p.x_hi = p.y_hi = 10.0;
    set_collision_data(p);
    p.mirror_x = -10.0;
    p.mirror_y = -10.0;
    return p;
}

std::vector<std::string> problem_names()
{
    return {"double-pole-1d", "line-kink-2d", "ring", "breather", "collide2", "collide4"};
}

Problem problem_by_name(const std::string& name)
{
    Problem p;
    if (name == "double-pole-1d")
        p = double_pole_1d();
    else if (name == "line-kink-2d")
        p = line_kink_2d();
    else if (name == "ring")
        p = circular_ring();
    else if (name == "breather")
        p = elliptical_breather();
    else if (name == "collide2")
        p = two_ring_collision();
    else if (name == "collide4")
        p = four_ring_collision();
    else
        throw ConfigError("unknown problem '" + name + "'");

    if (const double m = initial_data_mismatch(p); !(m <= 1e-12))
        throw ConfigError("problem '" + name + "': exact solution inconsistent with f, g");
    return p;
}

GridPtr make_problem_grid(const Problem& p, std::size_t n1, std::size_t n2)
{
    if (p.one_d)
        return make_grid_1d(p.x_lo, p.x_hi, n1, p.boundary);
    return make_grid(p.x_lo, p.x_hi, p.y_lo, p.y_hi, n1, n2, p.boundary);
}

std::size_t partitions_for_spacing(double lo, double hi, double h)
{
    if (!(h > 0.0))
        throw ConfigError("spacing must be positive");
    const double n = (hi - lo) / h;
    const double rounded = std::round(n);
    if (rounded < 1.0 || std::abs(n - rounded) > 1e-9 * std::max(1.0, n))
        throw ConfigError("spacing does not divide the domain evenly");
    return static_cast<std::size_t>(rounded);
}

double initial_data_mismatch(const Problem& p, std::size_t samples_per_axis)
{
    if (!p.has_exact())
        return 0.0;
    // Eighth-order central difference for d/dt at t = 0.
    constexpr std::array<double, 4> weights{4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    constexpr double dt = 0.02;

    double worst = 0.0;
    const std::size_t ny = p.one_d ? 1 : samples_per_axis;
    for (std::size_t a = 0; a < samples_per_axis; ++a) {
        for (std::size_t b = 0; b < ny; ++b) {
            const double x = p.x_lo + (p.x_hi - p.x_lo) * (static_cast<double>(a) + 0.5) /
                                          static_cast<double>(samples_per_axis);
            const double y = p.one_d ? 0.0
                                     : p.y_lo + (p.y_hi - p.y_lo) * (static_cast<double>(b) + 0.5) /
                                                    static_cast<double>(ny);
            worst = std::max(worst, std::abs(p.exact(x, y, 0.0) - p.f(x, y)));
            if (p.exact_dt)
                worst = std::max(worst, std::abs(p.exact_dt(x, y, 0.0) - p.g(x, y)));
            double dudt = 0.0;
            for (std::size_t k = 0; k < weights.size(); ++k) {
                const double s = static_cast<double>(k + 1) * dt;
                dudt += weights[k] * (p.exact(x, y, s) - p.exact(x, y, -s));
            }
            dudt /= dt;
            // Truncation error of the difference quotient sits far above round-off.
            worst = std::max(worst, 1e-6 * std::abs(dudt - p.g(x, y)));
        }
    }
    return worst;
}

} // namespace sg
