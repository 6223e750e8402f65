#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sg {

/// Thrown for malformed inputs: bad extents, mismatched grids, non-finite data.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a computation fails numerically (solver breakdown, NaN).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Boundary { Periodic, DirichletExact };

/**
 * Uniform rectangular mesh on [x_lo, x_hi] x [y_lo, y_hi].
 *
 * n1, n2 are the partition counts; spacings are (hi - lo) / n. A periodic
 * axis stores nodes j = 0 .. n-1 (node n is the image of node 0). A
 * DirichletExact axis stores j = 0 .. n so both walls are present; the outer
 * ring of stored nodes holds prescribed values.
 *
 * 1D mode is n2 == 1 with a unit-length y extent: the y axis is inactive,
 * carries a single node, and every y-difference is zero.
 *
 * Storage is j2-outer / j1-inner: index = j1 + nodes1() * j2.
 */
class Grid {
public:
    Grid(double x_lo, double x_hi, double y_lo, double y_hi, std::size_t n1,
         std::size_t n2, Boundary boundary);

    double x_lo() const { return x_lo_; }
    double x_hi() const { return x_hi_; }
    double y_lo() const { return y_lo_; }
    double y_hi() const { return y_hi_; }
    std::size_t n1() const { return n1_; }
    std::size_t n2() const { return n2_; }
    double h1() const { return h1_; }
    double h2() const { return h2_; }
    Boundary boundary() const { return boundary_; }
    bool is_1d() const { return n2_ == 1; }

    std::size_t nodes1() const { return nodes1_; }
    std::size_t nodes2() const { return nodes2_; }
    std::size_t size() const { return nodes1_ * nodes2_; }
    double cell_measure() const { return h1_ * h2_; }

    std::size_t index(std::size_t j1, std::size_t j2) const { return j1 + nodes1_ * j2; }
    double x(std::size_t j1) const { return x_lo_ + static_cast<double>(j1) * h1_; }
    double y(std::size_t j2) const { return y_lo_ + static_cast<double>(j2) * h2_; }

    /// True on the outer ring of a DirichletExact grid; always false when periodic.
    bool is_boundary(std::size_t idx) const { return !boundary_mask_.empty() && boundary_mask_[idx]; }

    bool operator==(const Grid& other) const;

private:
    double x_lo_, x_hi_, y_lo_, y_hi_;
    std::size_t n1_, n2_;
    double h1_, h2_;
    Boundary boundary_;
    std::size_t nodes1_, nodes2_;
    std::vector<bool> boundary_mask_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(double x_lo, double x_hi, double y_lo, double y_hi, std::size_t n1,
                  std::size_t n2, Boundary boundary);

/// 1D grid on [x_lo, x_hi] with n partitions.
GridPtr make_grid_1d(double x_lo, double x_hi, std::size_t n, Boundary boundary);

/// Periodic image of j in [0, n-1]; defined for j in {-1, ..., n}.
constexpr std::size_t wrap(std::ptrdiff_t j, std::size_t n)
{
    const auto sn = static_cast<std::ptrdiff_t>(n);
    return static_cast<std::size_t>(((j % sn) + sn) % sn);
}

/**
 * Real value per stored grid node.
 *
 * Values supplied from outside are checked for finiteness. Arithmetic inside
 * the library writes through data(); schemes re-check their outputs.
 */
class MeshFunction {
public:
    MeshFunction() = default;
    explicit MeshFunction(GridPtr grid, double fill = 0.0);
    MeshFunction(GridPtr grid, std::vector<double> values);

    const GridPtr& grid_ptr() const { return grid_; }
    const Grid& grid() const { return *grid_; }
    std::size_t size() const { return values_.size(); }

    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    double at(std::size_t j1, std::size_t j2) const { return values_[grid_->index(j1, j2)]; }

    std::span<const double> values() const { return values_; }
    std::span<double> data() { return values_; }

    bool all_finite() const;
    void require_finite(const std::string& what) const;

private:
    GridPtr grid_;
    std::vector<double> values_;
};

bool same_grid(const Grid& a, const Grid& b);
void require_same_grid(const MeshFunction& a, const MeshFunction& b);

/// h1 h2 sum U V, accumulated sequentially in storage order.
double inner(const MeshFunction& u, const MeshFunction& v);
double l2(const MeshFunction& u);
double linf(const MeshFunction& u);
/// sqrt(||U||^2 + ||dx U||^2 + ||dy U||^2) with forward differences.
double h1_norm(const MeshFunction& u);

} // namespace sg
