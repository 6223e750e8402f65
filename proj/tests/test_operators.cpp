#include "sg/operators.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace sg;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

MeshFunction sample(const GridPtr& g, auto fn)
{
    MeshFunction f(g);
    for (std::size_t j2 = 0; j2 < g->nodes2(); ++j2)
        for (std::size_t j1 = 0; j1 < g->nodes1(); ++j1)
            f[g->index(j1, j2)] = fn(g->x(j1), g->is_1d() ? 0.0 : g->y(j2));
    return f;
}

} // namespace

TEST_CASE("delta_x")
{
    SUBCASE("constant field")
    {
        auto g = make_grid(0, 1, 0, 1, 6, 5, Boundary::Periodic);
        Stencil st(g);
        auto d = delta_x(st, MeshFunction(g, 3.25));
        CHECK(linf(d) == 0.0);
        CHECK(linf(delta_y(st, MeshFunction(g, 3.25))) == 0.0);
    }
    SUBCASE("alternating field wraps")
    {
        auto g = make_grid_1d(0, 4, 4, Boundary::Periodic);
        Stencil st(g);
        auto d = delta_x(st, MeshFunction(g, {0, 1, 0, 1}));
        CHECK(d[0] == 1);
        CHECK(d[1] == -1);
        CHECK(d[2] == 1);
        CHECK(d[3] == -1);
    }
    SUBCASE("second order at the half node")
    {
        // Richardson: error at h, h/2, h/4 should shrink by ~4 each time.
        double prev = 0.0;
        for (std::size_t n : {128u, 256u, 512u}) {
            auto g = make_grid_1d(0, 1, n, Boundary::Periodic);
            Stencil st(g);
            auto d = delta_x(st, sample(g, [](double x, double) { return std::sin(2 * kPi * x); }));
            double err = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                err = std::max(err, std::abs(d[j] - 2 * kPi * std::cos(2 * kPi * (g->x(j) + 0.5 * g->h1()))));
            const double c = err / (g->h1() * g->h1());
            CHECK(c < 40.0); // (2 pi)^3 / 24 ~ 10.3
            if (prev > 0.0)
                CHECK(prev / err == doctest::Approx(4.0).epsilon(0.01));
            prev = err;
        }
    }
    SUBCASE("1D y-difference vanishes")
    {
        auto g = make_grid_1d(0, 1, 8, Boundary::Periodic);
        Stencil st(g);
        std::mt19937_64 rng(1);
        CHECK(linf(delta_y(st, oracle::random_field(g, rng))) == 0.0);
    }
    SUBCASE("grid mismatch")
    {
        Stencil st(make_grid_1d(0, 1, 8, Boundary::Periodic));
        CHECK_THROWS_AS(delta_x(st, MeshFunction(make_grid_1d(0, 1, 9, Boundary::Periodic))), ConfigError);
    }
}

TEST_CASE("laplacian")
{
    SUBCASE("constant")
    {
        auto g = make_grid(0, 1, 0, 1, 8, 8, Boundary::Periodic);
        CHECK(linf(laplacian(Stencil(g), MeshFunction(g, -2.0))) == 0.0);
    }
    SUBCASE("single spike 1D")
    {
        auto g = make_grid_1d(0, 4, 4, Boundary::Periodic);
        auto l = laplacian(Stencil(g), MeshFunction(g, {1, 0, 0, 0}));
        CHECK(l[0] == -2);
        CHECK(l[1] == 1);
        CHECK(l[2] == 0);
        CHECK(l[3] == 1);
    }
    SUBCASE("matches dense assembly")
    {
        std::mt19937_64 rng(3);
        auto g = make_grid(0, 1.5, 0, 1, 6, 5, Boundary::Periodic);
        auto u = oracle::random_field(g, rng);
        const Eigen::MatrixXd lap = oracle::dense_periodic_laplacian(6, 5, g->h1(), g->h2());
        const Eigen::VectorXd ref = lap * oracle::to_eigen(u);
        const auto l = laplacian(Stencil(g), u);
        for (std::size_t i = 0; i < l.size(); ++i)
            CHECK(l[i] == doctest::Approx(ref[static_cast<Eigen::Index>(i)]).epsilon(1e-12));
    }
    SUBCASE("summation by parts on sin sin")
    {
        auto g = make_grid(0, 1, 0, 1, 64, 64, Boundary::Periodic);
        Stencil st(g);
        auto u = sample(g, [](double x, double y) { return std::sin(2 * kPi * x) * std::sin(2 * kPi * y); });
        const double lhs = inner(laplacian(st, u), u);
        const double dx = l2(delta_x(st, u));
        const double dy = l2(delta_y(st, u));
        CHECK(lhs < 0.0);
        CHECK(std::abs(lhs + dx * dx + dy * dy) <= 1e-13 * std::abs(lhs));
    }
    SUBCASE("Dirichlet ring is zero and interior reads the walls")
    {
        auto g = make_grid(0, 4, 0, 4, 4, 4, Boundary::DirichletExact);
        Stencil st(g);
        auto u = sample(g, [](double x, double y) { return x * x + 3 * y * y; });
        auto l = laplacian(st, u);
        auto lh = laplacian_homogeneous(st, u);
        for (std::size_t i = 0; i < g->size(); ++i) {
            if (g->is_boundary(i)) {
                CHECK(l[i] == 0.0);
                CHECK(lh[i] == 0.0);
            } else {
                CHECK(l[i] == doctest::Approx(8.0));
            }
        }
        // Centre node (2,2) has no ring neighbours, so both agree there.
        CHECK(lh.at(2, 2) == doctest::Approx(8.0));
        CHECK(lh.at(1, 1) != doctest::Approx(8.0));
    }
}

TEST_CASE("summation by parts for random fields")
{
    std::mt19937_64 rng(5);
    for (auto g : {make_grid(0, 2, 0, 1, 16, 12, Boundary::Periodic), make_grid_1d(-3, 3, 50, Boundary::Periodic)}) {
        Stencil st(g);
        for (int trial = 0; trial < 10; ++trial) {
            auto u = oracle::random_field(g, rng);
            auto v = oracle::random_field(g, rng);
            const double lhs = inner(laplacian(st, u), v);
            const double rhs = -inner(delta_x(st, u), delta_x(st, v)) - inner(delta_y(st, u), delta_y(st, v));
            CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(std::abs(lhs), std::abs(rhs)) + 1e-13);
        }
    }
}

TEST_CASE("difference operators commute")
{
    std::mt19937_64 rng(9);
    auto g = make_grid(0, 1, 0, 2, 9, 7, Boundary::Periodic);
    Stencil st(g);
    auto u = oracle::random_field(g, rng);
    auto xy = delta_x(st, delta_y(st, u));
    auto yx = delta_y(st, delta_x(st, u));
    for (std::size_t i = 0; i < u.size(); ++i)
        CHECK(std::abs(xy[i] - yx[i]) <= 64 * kEps * (std::abs(xy[i]) + 1.0) / (g->h1() * g->h2()));
}

TEST_CASE("discrete Leibniz rule in space")
{
    std::mt19937_64 rng(13);
    auto g = make_grid(0, 1, 0, 1, 10, 10, Boundary::Periodic);
    Stencil st(g);
    auto u = oracle::random_field(g, rng);
    auto v = oracle::random_field(g, rng);
    MeshFunction uv(g);
    for (std::size_t i = 0; i < uv.size(); ++i)
        uv[i] = u[i] * v[i];
    for (int axis = 0; axis < 2; ++axis) {
        auto d = axis == 0 ? delta_x : delta_y;
        auto avg = axis == 0 ? average_x : average_y;
        const auto lhs = d(st, uv);
        const auto au = avg(st, u);
        const auto av = avg(st, v);
        const auto du = d(st, u);
        const auto dv = d(st, v);
        const double h = axis == 0 ? g->h1() : g->h2();
        for (std::size_t i = 0; i < uv.size(); ++i) {
            const double rhs = au[i] * dv[i] + du[i] * av[i];
            CHECK(std::abs(lhs[i] - rhs) <= 8 * kEps * 4.0 / h);
        }
    }
}

TEST_CASE("b and its derivatives")
{
    CHECK(b_eval(0.0) == 0.0);
    CHECK(b_eval(kPi / 2) == doctest::Approx(0.70710678118654752).epsilon(1e-15));
    CHECK(std::abs(b_eval(kPi)) < 1e-15);
    CHECK(b_prime(0.0) == 1.0);
    CHECK_THROWS_AS(b_eval(NAN), ConfigError);
    CHECK_THROWS_AS(b_prime(INFINITY), ConfigError);
}

TEST_CASE("b bounds and derivative consistency on 1e6 samples")
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> dist(-10 * kPi, 10 * kPi);
    std::size_t violations = 0;
    double worst_d1 = 0.0, worst_d2 = 0.0;
    constexpr double step = 1e-4;
    for (int k = 0; k < 1'000'000; ++k) {
        const double x = dist(rng);
        violations += std::abs(b_eval(x)) > 1.0;
        violations += std::abs(b_prime(x)) > 1.5;
        violations += std::abs(b_double_prime(x)) > 2.5;
        const double fd1 = (b_eval(x + step) - b_eval(x - step)) / (2 * step);
        const double fd2 = (b_prime(x + step) - b_prime(x - step)) / (2 * step);
        worst_d1 = std::max(worst_d1, std::abs(fd1 - b_prime(x)));
        worst_d2 = std::max(worst_d2, std::abs(fd2 - b_double_prime(x)));
    }
    CHECK(violations == 0);
    CHECK(worst_d1 <= 1e-6);
    CHECK(worst_d2 <= 1e-6);
}

TEST_CASE("time averaging and extrapolation")
{
    auto g = make_grid(0, 1, 0, 1, 8, 8, Boundary::Periodic);
    CHECK(linf(extrapolate_half(MeshFunction(g, 2.0), MeshFunction(g, 2.0))) == 2.0);
    CHECK(extrapolate_half(MeshFunction(g, 1.0), MeshFunction(g, 0.0))[5] == 1.5);
    CHECK(time_average(MeshFunction(g, 2.0), MeshFunction(g, 2.0))[3] == 2.0);
    CHECK(time_average(MeshFunction(g, 1.0), MeshFunction(g, 0.0))[3] == 0.5);

    std::mt19937_64 rng(17);
    auto a = oracle::random_field(g, rng);
    auto b = oracle::random_field(g, rng);
    auto e = extrapolate_half(a, b);
    auto m = time_average(a, b);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(e[i] == doctest::Approx(1.5 * a[i] - 0.5 * b[i]).epsilon(1e-15));
        CHECK(m[i] == doctest::Approx(0.5 * a[i] + 0.5 * b[i]).epsilon(1e-15));
    }
    CHECK_THROWS_AS(time_average(a, MeshFunction(make_grid(0, 1, 0, 1, 8, 9, Boundary::Periodic))), ConfigError);
}

TEST_CASE("h1 norm composes the three l2 terms")
{
    std::mt19937_64 rng(19);
    auto g = make_grid(0, 1, 0, 1, 12, 12, Boundary::Periodic);
    Stencil st(g);
    auto u = oracle::random_field(g, rng);
    const double a = l2(u), bx = l2(delta_x(st, u)), by = l2(delta_y(st, u));
    CHECK(h1_norm(u) * h1_norm(u) == doctest::Approx(a * a + bx * bx + by * by).epsilon(1e-14));
}
