#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "rainbow/baselines.hpp"
#include "rainbow/hamilton_search.hpp"
#include "rainbow/instance.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/structures.hpp"

namespace rainbow {

struct Reserve {
    int r = 0;
    std::vector<int> reserve;  // R: the first r vertices
    std::vector<int> rest;     // N'
};

/// r = ceil(C sqrt(n)); throws std::invalid_argument unless 1 <= r and 2r < n.
Reserve select_reserve(int n, double C);

struct PathSystem {
    int n = 0;
    std::vector<EdgeId> edges;              // accepted, in acceptance order
    std::vector<std::array<int, 2>> nbr;    // up to two neighbours, -1 when absent
    std::vector<char> color_used;           // C1 as a flag per color
    int components = 0;                     // among N'
    double cost = 0.0;
    bool stalled = false;

    std::size_t scanned = 0;
    std::size_t skipped_cycle = 0;
    std::size_t skipped_degree = 0;
    std::size_t skipped_color = 0;
    std::size_t lambda_exceed = 0;  // accepted edges longer than lambda_k

    int degree(int v) const { return (nbr[v][0] >= 0) + (nbr[v][1] >= 0); }
};

/// Scans the edges inside N' cheapest first (ties by EdgeId) and accepts an
/// edge unless it closes a cycle, creates a degree-3 vertex or repeats a color,
/// until k0 edges are accepted. Running out of edges sets `stalled`.
/// lambda_k = C sqrt(n) / (n' - k) is checked in unit-square lengths.
PathSystem greedy_paths(const Instance& inst, const Coloring& coloring, const Reserve& res, int k0, double C,
                        bool check_invariants = false);

/// Throws std::logic_error when the path system violates max degree 2,
/// acyclicity or color distinctness.
void check_path_system(const PathSystem& ps, const Coloring& coloring);

struct CompletionEdge {
    int y = 0;  // reserve vertex
    int x = 0;  // path endpoint or isolated vertex
    int color = 0;
    double cost = 0.0;
};

struct CompletionGraph {
    std::vector<int> Y;                       // reserve
    std::vector<std::array<int, 2>> paths;    // endpoints of nontrivial paths
    std::vector<int> isolated;
    std::vector<CompletionEdge> edges;        // every reserve--port edge
    std::vector<int> gamma1;                  // edges with a color outside C1
    std::vector<int> gamma2;                  // gamma1 edges whose color occurs once in gamma1
    std::vector<int> gamma_le2;               // one cheapest edge per color used at most twice in gamma1
    int fresh_colors = 0;                     // q' = |C \ C1|
    double mean_fresh_usage = 0.0;            // mean gamma1 multiplicity over fresh colors
    double expected_usage_bound = 0.0;        // 2 r^2 / q'
};

CompletionGraph build_completion(const Instance& inst, const Coloring& coloring, const Reserve& res,
                                 const PathSystem& ps);

/// Walks each nontrivial path from one endpoint to the other.
std::vector<int> path_vertices(const PathSystem& ps, int from);

enum class CompletionStage { none, gamma2, gamma2_retry, gamma_le2, gamma1 };
std::string to_string(CompletionStage stage);

struct TourOptions {
    double eps = 0.2;
    double C = 1.5;
    int restarts = 50;                // Hamilton search restarts per stage
    int steps_per_vertex = 10;        // rotation steps per restart = this * n
    bool polish = true;               // color-preserving 2-opt after stitching
    TwoOptOptions two_opt;
    int stall_retries = 3;            // greedy stall: retry with C * 1.5
    bool check_invariants = false;
};

struct TourDiagnostics {
    int r = 0;
    int k0 = 0;
    double C_used = 0.0;
    double greedy_cost = 0.0;
    double completion_cost = 0.0;
    double polish_gain = 0.0;
    std::size_t polish_moves = 0;
    std::size_t skipped_cycle = 0;
    std::size_t skipped_degree = 0;
    std::size_t skipped_color = 0;
    double lambda_exceed_fraction = 0.0;
    std::size_t gamma1 = 0;
    std::size_t gamma2 = 0;
    double mean_fresh_usage = 0.0;
    int retries = 0;  // completion stages tried beyond the first
    int stall_retries = 0;
    CompletionStage stage = CompletionStage::none;
};

struct TourResult {
    bool success = false;
    RainbowTour tour;
    TourDiagnostics diag;
    std::string failure;  // "GreedyStalled" or "CompletionFailed" on failure
};

/// Full pipeline: reserve, greedy path system, completion through the
/// reserve, stitching, optional polish. Requires q >= ceil((1 + eps) n).
TourResult rainbow_tour(const Instance& inst, const Coloring& coloring, const TourOptions& opts,
                        const SeedSpec& seed);

/// 2-opt restricted to moves after which the tour is still rainbow. Returns
/// the number of applied moves.
std::size_t rainbow_two_opt(const Instance& inst, const Coloring& coloring, std::vector<int>& order,
                            const TwoOptOptions& opts = {});

/// q = ceil((1 + eps) n), computed so that exact products do not round up.
int palette_size(int n, double eps);

}  // namespace rainbow
