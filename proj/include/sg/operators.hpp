#pragma once

#include "sg/grid.hpp"

#include <cstdint>
#include <vector>

namespace sg {

/**
 * Neighbour tables for the forward/backward differences on one grid.
 *
 * Periodic axes wrap. On a DirichletExact axis a read past the last stored
 * node resolves to the node itself, so differences taken on the outer ring
 * vanish; interior nodes read the stored boundary values directly. On the
 * inactive y axis of a 1D grid both y-neighbours are the node itself.
 */
class Stencil {
public:
    explicit Stencil(GridPtr grid);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }

    std::uint32_t east(std::size_t i) const { return east_[i]; }
    std::uint32_t west(std::size_t i) const { return west_[i]; }
    std::uint32_t north(std::size_t i) const { return north_[i]; }
    std::uint32_t south(std::size_t i) const { return south_[i]; }

    /// 1/h^2 along each axis, zero for an inactive axis.
    double inv_h1_sq() const { return inv_h1_sq_; }
    double inv_h2_sq() const { return inv_h2_sq_; }

    void require_on_grid(const MeshFunction& u) const;

private:
    GridPtr grid_;
    std::vector<std::uint32_t> east_, west_, north_, south_;
    double inv_h1_sq_ = 0.0;
    double inv_h2_sq_ = 0.0;
};

/// (U[j1+1] - U[j1]) / h1
MeshFunction delta_x(const Stencil& s, const MeshFunction& u);
/// (U[j2+1] - U[j2]) / h2; identically zero in 1D.
MeshFunction delta_y(const Stencil& s, const MeshFunction& u);

/// (U[j1+1] + U[j1]) / 2, the spatial counterpart of the time average.
MeshFunction average_x(const Stencil& s, const MeshFunction& u);
MeshFunction average_y(const Stencil& s, const MeshFunction& u);

/**
 * Five-point Laplacian dx^2 U[j1-1] + dy^2 U[j2-1] (three-point in 1D).
 * Zero on the outer ring of a DirichletExact grid.
 */
MeshFunction laplacian(const Stencil& s, const MeshFunction& u);

/**
 * Laplacian with homogeneous boundary reads: on a DirichletExact grid any
 * neighbour on the outer ring contributes zero. Equal to laplacian() on
 * periodic grids. This is the Laplacian block of the interior system.
 */
MeshFunction laplacian_homogeneous(const Stencil& s, const MeshFunction& u);

/// Writes laplacian_homogeneous(u) into out without allocating.
void laplacian_homogeneous_into(const Stencil& s, std::span<const double> u, std::span<double> out);

/// sin x / sqrt(2 - cos x)
double b_eval(double x);
double b_prime(double x);
double b_double_prime(double x);

/// (3 U^n - U^{n-1}) / 2
MeshFunction extrapolate_half(const MeshFunction& u_n, const MeshFunction& u_nm1);
/// (U^{n+1} + U^n) / 2
MeshFunction time_average(const MeshFunction& u_np1, const MeshFunction& u_n);

/// Elementwise b(U).
MeshFunction b_field(const MeshFunction& u);

} // namespace sg
