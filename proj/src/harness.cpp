#include "sg/harness.hpp"

#include <fmt/format.h>
#include <fmt/os.h>

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>

namespace sg {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string num(double x) { return fmt::format("{:.17g}", x); }

std::size_t effective_n2(std::size_t n1, std::size_t n2) { return n2 ? n2 : n1; }

json settings_json(const SolverSettings& s)
{
    return {{"pcg_tol", s.pcg_tol},
            {"pcg_max_iter", s.pcg_max_iter},
            {"fp_tol", s.fp_tol},
            {"fp_max", s.fp_max}};
}

SolverSettings settings_from_json(const json& j)
{
    SolverSettings s;
    s.pcg_tol = j.at("pcg_tol").get<double>();
    s.pcg_max_iter = j.at("pcg_max_iter").get<std::size_t>();
    s.fp_tol = j.at("fp_tol").get<double>();
    s.fp_max = j.at("fp_max").get<std::size_t>();
    return s;
}

json config_json(const RunConfig& c)
{
    return {{"problem", c.problem},
            {"scheme", scheme_name(c.scheme)},
            {"n1", c.n1},
            {"n2", c.n2},
            {"tau", c.tau},
            {"T", c.final_time},
            {"record_every", c.record_every},
            {"snapshots", c.snapshots},
            {"display_transform", c.display_transform},
            {"mirror", c.mirror},
            {"out_dir", c.out_dir.string()},
            {"solver", settings_json(c.solver)}};
}

json stats_json(const RunStats& s)
{
    return {{"steps", s.steps},
            {"pcg_iterations", s.pcg_iterations},
            {"pcg_solves", s.pcg_solves},
            {"max_pcg_iterations", s.max_pcg_iterations},
            {"fixed_point_iterations", s.fixed_point_iterations},
            {"max_linear_residual", s.max_linear_residual},
            {"stepping_seconds", s.stepping_seconds}};
}

void write_json(const fs::path& path, const json& j)
{
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

void ensure_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
}

void write_energy_csv(const fs::path& path, const std::vector<EnergyRecord>& records)
{
    auto out = fmt::output_file(path.string());
    out.print("t,e_modified,e_original,deviation\n");
    for (const auto& r : records)
        out.print("{},{},{},{}\n", num(r.t), num(r.e_modified), num(r.e_original), num(r.deviation));
}

void write_field_csv(const fs::path& path, const MeshFunction& f)
{
    const Grid& g = f.grid();
    auto out = fmt::output_file(path.string());
    out.print("x,y,value\n");
    for (std::size_t j2 = 0; j2 < g.nodes2(); ++j2)
        for (std::size_t j1 = 0; j1 < g.nodes1(); ++j1)
            out.print("{},{},{}\n", num(g.x(j1)), num(g.is_1d() ? 0.0 : g.y(j2)),
                      num(f.at(j1, j2)));
}

std::string optional_num(const std::optional<double>& v) { return v ? fmt::format("{:.6f}", *v) : ""; }

} // namespace

void validate(const RunConfig& cfg)
{
    problem_by_name(cfg.problem);
    if (cfg.n1 < 2)
        throw ConfigError("n1 must be at least 2");
    if (cfg.record_every == 0)
        throw ConfigError("record_every must be at least 1");
    make_time_grid(cfg.final_time, cfg.tau);
    if (!(cfg.solver.pcg_tol > 0.0) || !(cfg.solver.fp_tol > 0.0) || cfg.solver.fp_max == 0)
        throw ConfigError("solver tolerances must be positive");
}

std::vector<std::size_t> snapshot_steps(const std::vector<double>& times, const TimeGrid& tg)
{
    std::vector<std::size_t> steps;
    for (double t : times) {
        if (!std::isfinite(t) || t < 0.0)
            throw ConfigError("snapshot time must be non-negative");
        const double k = std::round(t / tg.tau);
        if (std::abs(k * tg.tau - t) > 0.5 * tg.tau || k > static_cast<double>(tg.steps))
            throw ConfigError(fmt::format("snapshot time {} is not on the time grid", t));
        steps.push_back(static_cast<std::size_t>(k));
    }
    return steps;
}

MeshFunction output_field(const MeshFunction& u, const Problem& p, bool display, bool mirror)
{
    const Grid& g = u.grid();
    MeshFunction out = u;
    if (display && p.display == DisplayTransform::SinHalf)
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = std::sin(0.5 * u[i]);
    if (!mirror)
        return out;

    auto reflect = [](double coord, double line, double lo, double h, std::size_t count,
                      std::size_t j) -> std::size_t {
        if (coord >= line)
            return j;
        const double k = std::round((2.0 * line - coord - lo) / h);
        if (k < 0.0 || k >= static_cast<double>(count))
            return j;
        return static_cast<std::size_t>(k);
    };
    const MeshFunction src = out;
    for (std::size_t j2 = 0; j2 < g.nodes2(); ++j2) {
        for (std::size_t j1 = 0; j1 < g.nodes1(); ++j1) {
            std::size_t k1 = j1, k2 = j2;
            if (p.mirror_x)
                k1 = reflect(g.x(j1), *p.mirror_x, g.x_lo(), g.h1(), g.nodes1(), j1);
            if (p.mirror_y && !g.is_1d())
                k2 = reflect(g.y(j2), *p.mirror_y, g.y_lo(), g.h2(), g.nodes2(), j2);
            out[g.index(j1, j2)] = src.at(k1, k2);
        }
    }
    return out;
}

std::string snapshot_file_name(double t) { return fmt::format("field_t{}.csv", t); }

int cmd_run(const RunConfig& cfg)
{
    validate(cfg);
    const Problem problem = problem_by_name(cfg.problem);
    const GridPtr grid = make_problem_grid(problem, cfg.n1, effective_n2(cfg.n1, cfg.n2));
    const TimeGrid tg = make_time_grid(cfg.final_time, cfg.tau);
    const std::vector<std::size_t> snap_steps = snapshot_steps(cfg.snapshots, tg);
    ensure_dir(cfg.out_dir);

    const Stencil stencil(grid);
    std::vector<EnergyRecord> energy;
    double e0 = 0.0;
    std::size_t last_step = 0;

    Recorder rec;
    rec.every = 1;
    rec.callback = [&](const SchemeState& s) {
        last_step = s.step;
        if (s.step == 0)
            e0 = global_energy_modified(stencil, s);
        if (s.step % cfg.record_every == 0 || s.step == tg.steps)
            energy.push_back(energy_record(stencil, s, e0));
        for (std::size_t k = 0; k < snap_steps.size(); ++k)
            if (snap_steps[k] == s.step)
                write_field_csv(cfg.out_dir / snapshot_file_name(cfg.snapshots[k]),
                                output_field(s.u, problem, cfg.display_transform, cfg.mirror));
    };
    const Recorder recorders[] = {rec};

    json meta;
    meta["config"] = config_json(cfg);
    meta["grid"] = {{"h1", grid->h1()}, {"h2", grid->h2()}, {"nodes", grid->size()},
                    {"boundary", grid->boundary() == Boundary::Periodic ? "periodic" : "dirichlet-exact"}};
    meta["start"] = cfg.scheme == Scheme::LiLeps
                        ? "first step linearised at U^0, then (3U^n - U^{n-1})/2"
                        : "two-level scheme, no bootstrap";

    const auto t0 = std::chrono::steady_clock::now();
    int status = kExitOk;
    try {
        const RunResult res = run(problem, cfg.scheme, grid, tg, recorders, cfg.solver);
        meta["stats"] = stats_json(res.stats);
        meta["status"] = "ok";
    } catch (const NumericalError& e) {
        meta["status"] = "failed";
        meta["error"] = e.what();
        meta["last_good_step"] = last_step;
        std::cerr << "numerical failure: " << e.what() << '\n';
        status = kExitNumerical;
    }
    meta["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_energy_csv(cfg.out_dir / "energy.csv", energy);
    write_json(cfg.out_dir / "meta.json", meta);
    return status;
}

std::vector<ConvergenceRow> convergence_table(const ConvergeConfig& cfg)
{
    if (cfg.levels < 2)
        throw ConfigError("converge: at least two levels required");
    const Problem problem = problem_by_name(cfg.problem);
    if (!problem.has_exact())
        throw ConfigError("converge: problem '" + cfg.problem + "' has no exact solution");

    std::vector<ConvergenceRow> rows;
    std::vector<RefinementSample> l2s, linfs, h1s;
    std::size_t n1 = cfg.base_n1;
    std::size_t n2 = effective_n2(cfg.base_n1, cfg.base_n2);
    double tau = cfg.base_tau;
    for (std::size_t level = 0; level < cfg.levels; ++level) {
        const GridPtr grid = make_problem_grid(problem, n1, n2);
        const TimeGrid tg = make_time_grid(cfg.final_time, tau);
        const RunResult res = run(problem, cfg.scheme, grid, tg, {}, cfg.solver);
        const ErrorReport err = error_vs_exact(res.final_state, problem);

        ConvergenceRow row;
        row.h = grid->h1();
        row.tau = tau;
        row.l2_err = err.l2_err;
        row.linf_err = err.linf_err;
        row.h1_err = err.h1_err;
        row.cpu_seconds = res.stats.stepping_seconds;
        l2s.push_back({row.h, tau, row.l2_err});
        linfs.push_back({row.h, tau, row.linf_err});
        h1s.push_back({row.h, tau, row.h1_err});
        if (level > 0) {
            row.l2_order = convergence_orders(l2s).back();
            row.linf_order = convergence_orders(linfs).back();
            row.h1_order = convergence_orders(h1s).back();
        }
        rows.push_back(row);
        n1 *= 2;
        n2 *= 2;
        tau /= 2.0;
    }
    return rows;
}

int cmd_converge(const ConvergeConfig& cfg)
{
    ensure_dir(cfg.out_dir);
    const std::vector<ConvergenceRow> rows = convergence_table(cfg);
    auto out = fmt::output_file((cfg.out_dir / "convergence.csv").string());
    out.print("h,tau,l2,l2_order,linf,linf_order,h1,h1_order,cpu_s\n");
    for (const auto& r : rows)
        out.print("{},{},{:.4e},{},{:.4e},{},{:.4e},{},{:.3f}\n", num(r.h), num(r.tau), r.l2_err,
                  optional_num(r.l2_order), r.linf_err, optional_num(r.linf_order), r.h1_err,
                  optional_num(r.h1_order), r.cpu_seconds);
    return kExitOk;
}

int cmd_compare(const CompareConfig& cfg)
{
    if (cfg.ep_tau && *cfg.ep_tau != cfg.tau)
        throw ConfigError("compare: both schemes must use the same time step");
    if (cfg.mesh_levels == 0 || cfg.record_every == 0)
        throw ConfigError("compare: mesh_levels and record_every must be at least 1");
    const Problem problem = problem_by_name(cfg.problem);
    const TimeGrid tg = make_time_grid(cfg.final_time, cfg.tau);
    ensure_dir(cfg.out_dir);

    auto cpu = fmt::output_file((cfg.out_dir / "cpu.csv").string());
    cpu.print("scheme,nodes,wall_s\n");
    json meta;
    meta["problem"] = cfg.problem;
    meta["tau"] = cfg.tau;
    meta["T"] = cfg.final_time;

    std::size_t n1 = cfg.n1;
    std::size_t n2 = effective_n2(cfg.n1, cfg.n2);
    for (std::size_t level = 0; level < cfg.mesh_levels; ++level) {
        const GridPtr grid = make_problem_grid(problem, n1, n2);
        const Stencil stencil(grid);
        for (Scheme scheme : {Scheme::LiLeps, Scheme::EpFds}) {
            std::vector<EnergyRecord> energy;
            double e0 = 0.0;
            std::vector<Recorder> recorders;
            if (level == 0) {
                recorders.push_back({cfg.record_every, [&](const SchemeState& s) {
                                         if (s.step == 0)
                                             e0 = global_energy_modified(stencil, s);
                                         energy.push_back(energy_record(stencil, s, e0));
                                     }});
            }
            // stepping_seconds excludes recorder time.
            const RunResult res = run(problem, scheme, grid, tg, recorders, cfg.solver);
            cpu.print("{},{},{:.6f}\n", scheme_name(scheme), grid->size(), res.stats.stepping_seconds);
            if (level == 0) {
                write_energy_csv(cfg.out_dir / ("energy_" + scheme_name(scheme) + ".csv"), energy);
                meta["stats"][scheme_name(scheme)] = stats_json(res.stats);
            }
        }
        n1 *= 2;
        n2 *= 2;
    }
    cpu.close();
    write_json(cfg.out_dir / "meta.json", meta);
    return kExitOk;
}

RunConfig run_config_from_meta(const fs::path& meta_json)
{
    std::ifstream in(meta_json);
    if (!in)
        throw ConfigError("cannot read " + meta_json.string());
    json meta;
    try {
        in >> meta;
        const json& c = meta.at("config");
        RunConfig cfg;
        cfg.problem = c.at("problem").get<std::string>();
        cfg.scheme = scheme_from_name(c.at("scheme").get<std::string>());
        cfg.n1 = c.at("n1").get<std::size_t>();
        cfg.n2 = c.at("n2").get<std::size_t>();
        cfg.tau = c.at("tau").get<double>();
        cfg.final_time = c.at("T").get<double>();
        cfg.record_every = c.at("record_every").get<std::size_t>();
        cfg.snapshots = c.at("snapshots").get<std::vector<double>>();
        cfg.display_transform = c.at("display_transform").get<bool>();
        cfg.mirror = c.at("mirror").get<bool>();
        cfg.out_dir = c.at("out_dir").get<std::string>();
        cfg.solver = settings_from_json(c.at("solver"));
        return cfg;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed meta.json: ") + e.what());
    }
}

} // namespace sg
