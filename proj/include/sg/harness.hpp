#pragma once

#include "sg/diagnostics.hpp"
#include "sg/schemes.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sg {

/// Process exit codes of the command-line front end.
enum ExitStatus : int { kExitOk = 0, kExitNumerical = 1, kExitConfig = 2 };

struct RunConfig {
    std::string problem;
    Scheme scheme = Scheme::LiLeps;
    std::size_t n1 = 0;
    std::size_t n2 = 0; ///< 0 means n2 = n1 (ignored in 1D)
    double tau = 0.01;
    double final_time = 1.0;
    std::size_t record_every = 1;
    std::vector<double> snapshots;
    bool display_transform = true; ///< apply the problem's sin(u/2) view to snapshots
    bool mirror = false;           ///< reflect snapshots across the problem's symmetry lines
    std::filesystem::path out_dir = "out";
    SolverSettings solver;
};

struct ConvergenceRow {
    double h = 0.0;
    double tau = 0.0;
    double l2_err = 0.0;
    std::optional<double> l2_order;
    double linf_err = 0.0;
    std::optional<double> linf_order;
    double h1_err = 0.0;
    std::optional<double> h1_order;
    double cpu_seconds = 0.0;
};

struct ConvergeConfig {
    std::string problem;
    Scheme scheme = Scheme::LiLeps;
    std::size_t base_n1 = 0;
    std::size_t base_n2 = 0;
    double base_tau = 0.01;
    std::size_t levels = 4;
    double final_time = 1.0;
    std::filesystem::path out_dir = "out";
    SolverSettings solver;
};

struct CompareConfig {
    std::string problem;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    double tau = 0.01;
    std::optional<double> ep_tau; ///< must equal tau when given
    double final_time = 1.0;
    std::size_t record_every = 1;
    std::size_t mesh_levels = 1; ///< timing ladder: n doubled per level at fixed tau
    std::filesystem::path out_dir = "out";
    SolverSettings solver;
};

/// Validates a run configuration, throwing ConfigError on the first problem.
void validate(const RunConfig& cfg);

/// Nearest level for each requested snapshot time; rejects times off the time grid.
std::vector<std::size_t> snapshot_steps(const std::vector<double>& times, const TimeGrid& tg);

/**
 * Snapshot values for output: optional sin(u/2) view, then optional
 * reflection across the problem's mirror lines (nodes on the low side of a
 * line take the value of their mirror image).
 */
MeshFunction output_field(const MeshFunction& u, const Problem& p, bool display, bool mirror);

std::string snapshot_file_name(double t);

/// Rows for a refinement ladder, orders filled from the second row on.
std::vector<ConvergenceRow> convergence_table(const ConvergeConfig& cfg);

int cmd_run(const RunConfig& cfg);
int cmd_converge(const ConvergeConfig& cfg);
int cmd_compare(const CompareConfig& cfg);

/// Reads the "config" object of a meta.json written by cmd_run.
RunConfig run_config_from_meta(const std::filesystem::path& meta_json);

} // namespace sg
