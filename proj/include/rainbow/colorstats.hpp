#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "rainbow/fit.hpp"
#include "rainbow/instance.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/tour_greedy.hpp"

namespace rainbow {

/// E(Z) for alpha items colored uniformly from beta colors, Z = number of
/// colors used at least twice:
/// beta (1 - (1-1/beta)^alpha - (alpha/beta)(1-1/beta)^(alpha-1)).
double expected_repeat_count(std::uint64_t alpha, std::uint64_t beta);

struct RepeatCountReport {
    std::uint64_t alpha = 0;
    std::uint64_t beta = 0;
    double expected = 0.0;
    std::uint64_t empirical = 0;
    double fraction = 0.0;  // empirical / beta
};

/// Draws alpha colors from the "colors" substream and counts repeats.
RepeatCountReport empirical_repeat_count(std::uint64_t alpha, std::uint64_t beta, const SeedSpec& seed);

struct PairCopy {
    int u = 0;
    int v = 0;
};

/// Copies of the two-point pattern at unit distance: pairs {u, v} with
/// |u - v| in (1 - 2 eps, 1 + 2 eps) and every other point at distance > D
/// from both. Coordinates are taken as given.
struct CopySet {
    double eps = 0.25;
    double D = 4.0;
    std::vector<PairCopy> copies;
};

CopySet find_pair_copies(std::span<const Point> points, double eps, double D);

/// Rescales a Euclidean instance to the square of side sqrt(n) first.
CopySet find_pair_copies(const Instance& inst, double eps, double D);

/// Brute-force check of the copy conditions, O(n * copies).
bool verify_pair_copies(std::span<const Point> points, const CopySet& set);

struct MstGapSample {
    bool feasible = false;
    double z = 0.0;      // rainbow optimum
    double zstar = 0.0;  // unconstrained optimum
};

MstGapSample mst_gap_sample(const Instance& inst, const Coloring& coloring);

struct TspGapSample {
    bool success = false;
    double z = 0.0;      // rainbow tour (heuristic)
    double zstar = 0.0;  // tsp_heuristic
    TourDiagnostics diag;
};

/// Heuristic on both sides: rainbow_tour against tsp_heuristic with the same
/// 2-opt options.
TspGapSample tsp_gap_sample(const Instance& inst, const Coloring& coloring, const TourOptions& opts,
                            const SeedSpec& seed);

struct GapReport {
    std::vector<int> ns;
    std::vector<double> mean;
    std::vector<double> sem;
    std::vector<int> count;
    std::vector<int> excluded;  // infeasible or failed cells
    bool all_nonnegative = true;
    ScalingFit fit;
};

GapReport make_gap_report(const std::map<int, std::vector<double>>& gaps, const std::map<int, int>& excluded);

/// Euclidean instances on the unit square, q = n - 1, exact on both sides.
GapReport mst_gap_experiment(const std::vector<int>& ns, int seeds, std::uint64_t master, int threads = 0);

/// Euclidean instances, q = ceil((1 + eps) n), heuristic on both sides.
GapReport tsp_gap_experiment(const std::vector<int>& ns, int seeds, std::uint64_t master, const TourOptions& opts,
                             int threads = 0);

}  // namespace rainbow
