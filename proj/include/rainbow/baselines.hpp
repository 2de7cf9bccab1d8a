#pragma once

#include <cstddef>

#include "rainbow/instance.hpp"
#include "rainbow/structures.hpp"

namespace rainbow {

/// Minimum spanning tree by Kruskal over all n(n-1)/2 edges, ties broken by
/// EdgeId. Throws std::invalid_argument for n = 0.
SpanningTree kruskal_mst(const Instance& inst);

inline constexpr int tsp_exact_max_n = 13;

/// Optimal tour by Held-Karp dynamic programming over subsets; 2 <= n <= 13.
Tour tsp_exact(const Instance& inst);

struct TwoOptOptions {
    int neighbors = 10;
    // Cap on improving moves. Counted, not timed, so results are reproducible.
    std::size_t max_moves = 0;  // 0 = 50 * n
};

/// Nearest-neighbour tour from vertex 0 followed by 2-opt (neighbour lists
/// with don't-look bits, then full-scan passes) until a local optimum or the
/// move budget. Requires n >= 3.
Tour tsp_heuristic(const Instance& inst, const TwoOptOptions& opts = {});

/// Improves a tour in place with 2-opt; returns the number of applied moves.
std::size_t two_opt(const Instance& inst, std::vector<int>& order, const TwoOptOptions& opts = {});

/// True when no pair of tour edges can be exchanged for a strict improvement.
bool is_two_opt_optimal(const Instance& inst, const std::vector<int>& order, double tol = 1e-12);

/// zeta(3) from the series sum 1/k^3 with an integral tail correction.
double zeta3();

struct WastlundOptions {
    std::size_t intervals = 4096;  // composite Simpson panels on [x*, upper]
    double upper = 40.0;           // tail beyond this is bounded analytically
};

/// y(x) > 0 solving (1 + x/2)e^{-x} + (1 + y/2)e^{-y} = 1. Throws
/// std::domain_error for x <= 0 and on root-solve failure.
double wastlund_y(double x);

/// tau = 1/2 * integral_0^inf y(x) dx.
double wastlund_constant(const WastlundOptions& opts = {});

}  // namespace rainbow
