#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "rainbow/fit.hpp"

namespace rainbow {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string kind;
    std::vector<int> n_grid;
    int seeds = 10;
    std::uint64_t master_seed = 1;
    std::string q_rule;  // empty: the kind's default

    // tree construction
    int K = 20;
    double B = 2.0;
    // tours
    double eps = 0.2;
    double C = 1.5;
    int budget = 50;  // Hamilton search restarts
    int steps_per_vertex = 10;
    bool polish = true;
    // copies
    double copy_eps = 0.25;
    double copy_D = 4.0;

    bool timing = false;  // wall_ms stays 0 otherwise, keeping CSVs byte-stable
    int threads = 0;      // 0: OpenMP default, capped by RAINBOW_OPT_THREADS
};

/// mst-gap, tsp-gap, repeat, copies, mst-uniform, rainbow-uniform,
/// tree-construct, tour.
const std::vector<std::string>& experiment_kinds();

/// Throws ConfigError on unknown kinds, q rules or out-of-range parameters.
void validate(const ExperimentConfig& config);

std::string default_q_rule(const std::string& kind);

/// Palette size for the config's q rule: "n-1", "n", "2n", "n^3", "eps"
/// (ceil((1 + eps) n)) or "none" (0).
int resolve_q(const ExperimentConfig& config, int n);

struct RunRecord {
    std::string kind;
    int n = 0;
    int q = 0;
    std::uint64_t seed = 0;
    std::string solver;
    bool success = false;
    double cost = 0.0;
    double wall_ms = 0.0;
    std::string extra_json;  // object with sorted keys; echoes every parameter
};

/// Per-cell numbers the summary is built from. `metric` is the kind's headline
/// quantity (gap, cost / sqrt(n), ...); `fit_value` is what the scaling fit
/// regresses on n.
struct CellOutcome {
    std::vector<RunRecord> rows;
    bool success = false;
    double metric = 0.0;
    double fit_value = 0.0;
};

struct NSummary {
    int n = 0;
    int cells = 0;
    int successes = 0;
    MeanStats metric;
    MeanStats fit_value;
    double metric_min = 0.0;
    double metric_max = 0.0;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::string metric_name;
    std::string fit_name;
    std::vector<RunRecord> rows;  // sorted by (n, seed, solver)
    std::vector<NSummary> summary;
    ScalingFit fit;
    std::vector<std::string> notes;
};

std::uint64_t cell_seed(std::uint64_t master, int n, int index);

/// Runs one (n, seed) cell. Solver exceptions become failed rows.
CellOutcome run_cell(const ExperimentConfig& config, int n, std::uint64_t seed, int seed_index);

/// Cells in parallel (OpenMP, dynamic schedule); output independent of the
/// thread count.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Same cells, one after another. Reference for the parallel runner.
ExperimentResult run_experiment_serial(const ExperimentConfig& config);

int effective_threads(int requested);

/// Header, rows, then the summary as '#' footer lines.
void write_csv(std::ostream& out, const ExperimentResult& result);
std::string to_csv(const ExperimentResult& result);

/// Rows of a CSV written by write_csv; footer and header skipped.
std::vector<RunRecord> read_csv(std::istream& in);

/// Rebuilds the cell's config from the parameters echoed in a row.
ExperimentConfig config_from_record(const RunRecord& row);

/// Re-runs the cell that produced `row` and returns the row of the same solver.
RunRecord rerun_row(const RunRecord& row);

std::string format_double(double v);

}  // namespace rainbow
