#pragma once

#include "sg/grid.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sg {

using InitialFn = std::function<double(double x, double y)>;
using SpaceTimeFn = std::function<double(double x, double y, double t)>;

enum class DisplayTransform { None, SinHalf };

/// Initial data, domain and (optionally) exact solution of one experiment.
struct Problem {
    std::string name;
    double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
    bool one_d = false;
    Boundary boundary = Boundary::Periodic;
    InitialFn f;
    InitialFn g;
    SpaceTimeFn exact;    ///< empty when no closed form is known
    SpaceTimeFn exact_dt; ///< time derivative of exact, empty when exact is
    DisplayTransform display = DisplayTransform::None;
    std::optional<double> mirror_x; ///< output is reflected across these lines
    std::optional<double> mirror_y;

    bool has_exact() const { return static_cast<bool>(exact); }
};

Problem double_pole_1d();
Problem line_kink_2d();
Problem circular_ring();
Problem elliptical_breather();
Problem two_ring_collision();
Problem four_ring_collision();

std::vector<std::string> problem_names();

/// Looks a problem up by its CLI name and validates it; throws ConfigError if unknown.
Problem problem_by_name(const std::string& name);

/// Grid over the problem's domain; n2 is ignored for 1D problems.
GridPtr make_problem_grid(const Problem& p, std::size_t n1, std::size_t n2);

/// Partition count giving spacing h over [lo, hi]; throws unless it divides evenly.
std::size_t partitions_for_spacing(double lo, double hi, double h);

/**
 * Largest mismatch between exact(., ., 0) and f and between exact_dt(., ., 0)
 * and g over a sample of points in the domain. A high-order difference
 * quotient of exact in t is also compared with g; that term is scaled by
 * 1e-6 so a 1e-12 threshold on the result allows it 1e-6. Zero for
 * problems without an exact solution.
 */
double initial_data_mismatch(const Problem& p, std::size_t samples_per_axis = 9);

} // namespace sg
