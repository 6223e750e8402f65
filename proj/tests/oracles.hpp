#pragma once

// Test-only reference implementations. Nothing here calls the library's
// stencil or solver code, so agreement is an independent check.

#include "sg/grid.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

namespace sg::oracle {

/// Dense periodic 5-point (3-point in 1D) Laplacian, assembled from indices.
inline Eigen::MatrixXd dense_periodic_laplacian(std::size_t n1, std::size_t n2, double h1, double h2)
{
    const auto n = static_cast<Eigen::Index>(n1 * n2);
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    auto id = [&](std::size_t a, std::size_t b) { return static_cast<Eigen::Index>((a % n1) + n1 * (b % n2)); };
    for (std::size_t b = 0; b < n2; ++b) {
        for (std::size_t a = 0; a < n1; ++a) {
            const auto i = id(a, b);
            lap(i, id(a + 1, b)) += 1.0 / (h1 * h1);
            lap(i, id(a + n1 - 1, b)) += 1.0 / (h1 * h1);
            lap(i, i) -= 2.0 / (h1 * h1);
            if (n2 > 1) {
                lap(i, id(a, b + 1)) += 1.0 / (h2 * h2);
                lap(i, id(a, b + n2 - 1)) += 1.0 / (h2 * h2);
                lap(i, i) -= 2.0 / (h2 * h2);
            }
        }
    }
    return lap;
}

inline Eigen::VectorXd to_eigen(const MeshFunction& f)
{
    Eigen::VectorXd v(static_cast<Eigen::Index>(f.size()));
    for (std::size_t i = 0; i < f.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = f[i];
    return v;
}

inline MeshFunction from_eigen(const GridPtr& g, const Eigen::VectorXd& v)
{
    std::vector<double> vals(v.data(), v.data() + v.size());
    return MeshFunction(g, std::move(vals));
}

inline MeshFunction random_field(const GridPtr& g, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0)
{
    std::uniform_real_distribution<double> dist(lo, hi);
    MeshFunction f(g);
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = dist(rng);
    return f;
}

struct Level {
    Eigen::VectorXd u, v, r;
};

/**
 * One step of the coupled three-field linearly implicit system, assembled
 * as a 3N x 3N dense matrix and solved by LU:
 *   (U1 - U0)/tau = (V1 + V0)/2
 *   (V1 - V0)/tau = L (U1 + U0)/2 - d (R1 + R0)/2
 *   (R1 - R0)/tau = (d/2) (V1 + V0)/2
 */
inline Level coupled_step(const Eigen::MatrixXd& lap, const Eigen::VectorXd& d, const Level& s0, double tau)
{
    const Eigen::Index n = lap.rows();
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd D = d.asDiagonal();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3 * n, 3 * n);
    Eigen::VectorXd rhs(3 * n);

    m.block(0, 0, n, n) = I / tau;
    m.block(0, n, n, n) = -0.5 * I;
    rhs.segment(0, n) = s0.u / tau + 0.5 * s0.v;

    m.block(n, 0, n, n) = -0.5 * lap;
    m.block(n, n, n, n) = I / tau;
    m.block(n, 2 * n, n, n) = 0.5 * D;
    rhs.segment(n, n) = s0.v / tau + 0.5 * lap * s0.u - 0.5 * D * s0.r;

    m.block(2 * n, n, n, n) = -0.25 * D;
    m.block(2 * n, 2 * n, n, n) = I / tau;
    rhs.segment(2 * n, n) = s0.r / tau + 0.25 * D * s0.v;

    const Eigen::VectorXd x = m.partialPivLu().solve(rhs);
    return {x.segment(0, n), x.segment(n, n), x.segment(2 * n, n)};
}

} // namespace sg::oracle
