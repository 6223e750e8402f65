#include "sg/diagnostics.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace sg;

namespace {

SchemeState constant_state(const GridPtr& g, double u, double v, double r)
{
    SchemeState s;
    s.u = MeshFunction(g, u);
    s.v = MeshFunction(g, v);
    s.r = MeshFunction(g, r);
    return s;
}

} // namespace

TEST_CASE("energy density examples")
{
    auto g = make_grid(0, 1, 0, 1, 4, 4, Boundary::Periodic);
    Stencil st(g);
    auto rest = local_energy_density(st, constant_state(g, 0, 0, 1));
    for (std::size_t i = 0; i < rest.size(); ++i)
        CHECK(rest[i] == 1.0);
    auto moving = local_energy_density(st, constant_state(g, 0, 2, 1));
    CHECK(moving[5] == 3.0);
    auto orig = local_energy_density(st, constant_state(g, 0, 0, 1), EnergyForm::Original);
    CHECK(orig[0] == 0.0);
}

TEST_CASE("global energies of the rest state")
{
    auto g = make_grid(0, 1, 0, 1, 8, 8, Boundary::Periodic);
    Stencil st(g);
    auto s = constant_state(g, 0, 0, 1);
    CHECK(global_energy_modified(st, s) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(global_energy_original(st, s) == 0.0);
    auto rec = energy_record(st, s, 1.0);
    CHECK(rec.deviation == 0.0);
}

TEST_CASE("ring initial energies differ by the domain area")
{
    const Problem p = circular_ring();
    auto g = make_problem_grid(p, 200, 200);
    Stencil st(g);
    auto s = init_state(p, g);
    const double em = global_energy_modified(st, s);
    const double eo = global_energy_original(st, s);
    CHECK(em == doctest::Approx(934.8166074369752).epsilon(1e-12));
    CHECK(eo == doctest::Approx(150.81660743697515).epsilon(1e-12));
    CHECK(em - eo == doctest::Approx(28.0 * 28.0).epsilon(1e-12));
}

TEST_CASE("local law residual")
{
    SUBCASE("rest pair")
    {
        auto g = make_grid(0, 1, 0, 1, 6, 6, Boundary::Periodic);
        Stencil st(g);
        auto s = constant_state(g, 0, 0, 1);
        auto s1 = s;
        s1.step = 1;
        CHECK(linf(local_law_residual(st, s, s1, 0.1)) == 0.0);
    }
    SUBCASE("linearly implicit steps close the modified law, not the original one")
    {
        const Problem p = circular_ring();
        auto g = make_problem_grid(p, 100, 100);
        Stencil st(g);
        StepContext ctx(g);
        const double tau = 0.01;
        auto s0 = init_state(p, g);
        auto s1 = li_leps_first_step(ctx, s0, tau);
        auto s2 = li_leps_step(ctx, s1, tau);
        for (const auto& [a, b] : {std::pair{&s0, &s1}, std::pair{&s1, &s2}}) {
            CHECK(linf(local_law_residual(st, *a, *b, tau)) <= 1e-8);
            CHECK(linf(local_law_residual(st, *a, *b, tau, EnergyForm::Original)) > 1e-6);
        }
    }
    SUBCASE("telescoping")
    {
        std::mt19937_64 rng(3);
        auto g = make_grid(0, 2, 0, 2, 12, 12, Boundary::Periodic);
        Stencil st(g);
        StepContext ctx(g);
        SchemeState s;
        s.u = oracle::random_field(g, rng);
        s.v = oracle::random_field(g, rng);
        s.r = oracle::random_field(g, rng, 1, 1.5);
        auto n = li_leps_first_step(ctx, s, 0.1);
        const double lhs = g->cell_measure() * [&] {
            auto res = local_law_residual(st, s, n, 0.1);
            double acc = 0;
            for (std::size_t i = 0; i < res.size(); ++i)
                acc += res[i];
            return acc;
        }();
        const double rhs = (global_energy_modified(st, n) - global_energy_modified(st, s)) / 0.1;
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, global_energy_modified(st, s) / 0.1));
    }
    SUBCASE("contract")
    {
        auto g = make_grid(0, 1, 0, 1, 4, 4, Boundary::Periodic);
        Stencil st(g);
        auto a = constant_state(g, 0, 0, 1);
        auto b = a;
        b.step = 2;
        CHECK_THROWS_AS(local_law_residual(st, a, b, 0.1), ConfigError);
        auto gd = make_grid(0, 1, 0, 1, 4, 4, Boundary::DirichletExact);
        Stencil sd(gd);
        auto c = constant_state(gd, 0, 0, 1);
        auto c1 = c;
        c1.step = 1;
        CHECK_THROWS_AS(local_law_residual(sd, c, c1, 0.1), ConfigError);
    }
}

TEST_CASE("exact-sampled state has zero error")
{
    const Problem p = double_pole_1d();
    auto g = make_problem_grid(p, 200, 1);
    SchemeState s;
    s.t = 0.7;
    std::vector<double> u(g->size()), v(g->size()), r(g->size());
    for (std::size_t i = 0; i < g->size(); ++i) {
        u[i] = p.exact(g->x(i), 0, s.t);
        v[i] = p.exact_dt(g->x(i), 0, s.t);
        r[i] = std::sqrt(2 - std::cos(u[i]));
    }
    s.u = MeshFunction(g, u);
    s.v = MeshFunction(g, v);
    s.r = MeshFunction(g, r);
    auto e = error_vs_exact(s, p);
    CHECK(e.l2_err == 0.0);
    CHECK(e.linf_err == 0.0);
    CHECK(e.h1_err == 0.0);
    CHECK(e.v_l2_err == 0.0);
    CHECK(e.r_l2_err == 0.0);
    CHECK_THROWS_AS(error_vs_exact(s, circular_ring()), ConfigError);
}

TEST_CASE("convergence orders")
{
    std::vector<RefinementSample> rows{{0.1, 0.01, 4e-3}, {0.05, 0.005, 1e-3}};
    auto o = convergence_orders(rows);
    REQUIRE(o.size() == 1);
    CHECK(o[0] == doctest::Approx(2.0));
    rows[1].error = 4e-3;
    CHECK(convergence_orders(rows)[0] == 0.0);
    rows[1].h = 0.06;
    CHECK_THROWS_AS(convergence_orders(rows), ConfigError);
    std::vector<RefinementSample> zero{{0.1, 0.01, 0.0}, {0.05, 0.005, 1e-3}};
    CHECK_THROWS_AS(convergence_orders(zero), ConfigError);
    CHECK_THROWS_AS(convergence_orders(std::span<const RefinementSample>{}), ConfigError);
}
