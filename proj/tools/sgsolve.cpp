// Command-line front end: run, converge, compare.

#include "sg/harness.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

struct MeshArg {
    std::vector<std::size_t> n;
    double h = 0.0;
};

void add_mesh_options(CLI::App* cmd, MeshArg& mesh)
{
    auto* n = cmd->add_option("--n", mesh.n, "partitions per axis: n1[,n2]")->delimiter(',')->expected(1, 2);
    auto* h = cmd->add_option("--h", mesh.h, "mesh spacing (alternative to --n)");
    n->excludes(h);
}

void add_solver_options(CLI::App* cmd, sg::SolverSettings& s)
{
    cmd->add_option("--pcg-tol", s.pcg_tol, "relative PCG tolerance")->capture_default_str();
    cmd->add_option("--pcg-max-iter", s.pcg_max_iter, "PCG iteration cap (0: 10 sqrt(nodes))");
    cmd->add_option("--fp-tol", s.fp_tol, "fixed-point tolerance (ep-fds)")->capture_default_str();
    cmd->add_option("--fp-max", s.fp_max, "fixed-point iteration cap (ep-fds)")->capture_default_str();
}

/// Resolves --n / --h against the problem domain.
std::pair<std::size_t, std::size_t> resolve_mesh(const MeshArg& mesh, const std::string& problem)
{
    const sg::Problem p = sg::problem_by_name(problem);
    if (mesh.h > 0.0) {
        const std::size_t n1 = sg::partitions_for_spacing(p.x_lo, p.x_hi, mesh.h);
        const std::size_t n2 = p.one_d ? 1 : sg::partitions_for_spacing(p.y_lo, p.y_hi, mesh.h);
        return {n1, n2};
    }
    if (mesh.n.empty())
        throw sg::ConfigError("either --n or --h is required");
    return {mesh.n[0], mesh.n.size() > 1 ? mesh.n[1] : 0};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Linearly implicit, local-energy-preserving sine-Gordon solver"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print this help message and exit");

    sg::RunConfig run_cfg;
    MeshArg run_mesh;
    std::string run_scheme = "li-leps";
    std::string from_meta;
    auto* run = app.add_subcommand("run", "simulate one problem, write energy trace and snapshots");
    run->add_option("--problem", run_cfg.problem, "problem name");
    run->add_option("--scheme", run_scheme, "li-leps or ep-fds")->capture_default_str();
    add_mesh_options(run, run_mesh);
    run->add_option("--tau", run_cfg.tau, "time step")->capture_default_str();
    run->add_option("--T", run_cfg.final_time, "final time")->capture_default_str();
    run->add_option("--snap", run_cfg.snapshots, "snapshot times t1,t2,...")->delimiter(',');
    run->add_option("--record-every", run_cfg.record_every, "energy record cadence in steps")
        ->capture_default_str();
    run->add_flag("!--raw", run_cfg.display_transform, "write u instead of the sin(u/2) view");
    run->add_flag("--mirror", run_cfg.mirror, "reflect snapshots across the symmetry lines");
    run->add_option("--out", run_cfg.out_dir, "output directory")->capture_default_str();
    run->add_option("--config", from_meta, "replay the configuration stored in a meta.json");
    add_solver_options(run, run_cfg.solver);

    sg::ConvergeConfig conv_cfg;
    MeshArg conv_mesh;
    std::string conv_scheme = "li-leps";
    auto* converge = app.add_subcommand("converge", "refinement study against the exact solution");
    converge->add_option("--problem", conv_cfg.problem, "problem name")->required();
    converge->add_option("--scheme", conv_scheme, "li-leps or ep-fds")->capture_default_str();
    add_mesh_options(converge, conv_mesh);
    converge->add_option("--tau", conv_cfg.base_tau, "coarsest time step")->capture_default_str();
    converge->add_option("--levels", conv_cfg.levels, "number of (h, tau) halvings")->capture_default_str();
    converge->add_option("--T", conv_cfg.final_time, "final time")->capture_default_str();
    converge->add_option("--out", conv_cfg.out_dir, "output directory")->capture_default_str();
    add_solver_options(converge, conv_cfg.solver);

    sg::CompareConfig cmp_cfg;
    MeshArg cmp_mesh;
    double ep_tau = 0.0;
    auto* compare = app.add_subcommand("compare", "energy traces and wall time of both schemes");
    compare->add_option("--problem", cmp_cfg.problem, "problem name")->required();
    add_mesh_options(compare, cmp_mesh);
    compare->add_option("--tau", cmp_cfg.tau, "time step")->capture_default_str();
    compare->add_option("--tau-ep", ep_tau, "time step for ep-fds (must equal --tau)");
    compare->add_option("--T", cmp_cfg.final_time, "final time")->capture_default_str();
    compare->add_option("--record-every", cmp_cfg.record_every, "energy record cadence")
        ->capture_default_str();
    compare->add_option("--mesh-levels", cmp_cfg.mesh_levels, "timing ladder length (n doubles)")
        ->capture_default_str();
    compare->add_option("--out", cmp_cfg.out_dir, "output directory")->capture_default_str();
    add_solver_options(compare, cmp_cfg.solver);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? sg::kExitOk : sg::kExitConfig;
    }

    try {
        if (*run) {
            if (!from_meta.empty()) {
                const auto out = run_cfg.out_dir;
                const bool out_given = run->count("--out") > 0;
                run_cfg = sg::run_config_from_meta(from_meta);
                if (out_given)
                    run_cfg.out_dir = out;
            } else {
                if (run_cfg.problem.empty())
                    throw sg::ConfigError("--problem is required");
                run_cfg.scheme = sg::scheme_from_name(run_scheme);
                std::tie(run_cfg.n1, run_cfg.n2) = resolve_mesh(run_mesh, run_cfg.problem);
            }
            return sg::cmd_run(run_cfg);
        }
        if (*converge) {
            conv_cfg.scheme = sg::scheme_from_name(conv_scheme);
            std::tie(conv_cfg.base_n1, conv_cfg.base_n2) = resolve_mesh(conv_mesh, conv_cfg.problem);
            return sg::cmd_converge(conv_cfg);
        }
        if (*compare) {
            if (compare->count("--tau-ep"))
                cmp_cfg.ep_tau = ep_tau;
            std::tie(cmp_cfg.n1, cmp_cfg.n2) = resolve_mesh(cmp_mesh, cmp_cfg.problem);
            return sg::cmd_compare(cmp_cfg);
        }
    } catch (const sg::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return sg::kExitConfig;
    } catch (const sg::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return sg::kExitNumerical;
    }
    return sg::kExitConfig;
}
