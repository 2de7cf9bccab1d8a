#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "rainbow/instance.hpp"

// Exhaustive reference solvers for tiny instances. They share no code with the
// production solvers so that agreement between the two is meaningful.
namespace rainbow::oracle {

struct TreeAnswer {
    bool feasible = false;
    std::vector<EdgeId> edges;
    double cost = 0.0;
};

struct TourAnswer {
    bool feasible = false;
    std::vector<int> order;
    double cost = 0.0;
};

struct MatchingAnswer {
    bool feasible = false;
    std::vector<std::pair<int, int>> pairs;
    double cost = 0.0;
};

inline constexpr int max_tree_n = 8;
inline constexpr int max_tour_n = 10;
inline constexpr int max_matching_n = 12;

/// Calls f(edges, degrees) for every labeled tree on n vertices, decoded from
/// its Pruefer sequence. edges holds (i, j) pairs with i < j.
void for_each_labeled_tree(int n, const std::function<void(const std::vector<std::pair<int, int>>&,
                                                           const std::vector<int>&)>& f);

TreeAnswer brute_mst(const Instance& inst);
TreeAnswer brute_rainbow_mst(const Instance& inst, const Coloring& coloring);
/// Rainbow trees with every vertex degree <= max_degree; max_degree < 2 with
/// n >= 3 is infeasible.
TreeAnswer brute_rainbow_degree_bounded_mst(const Instance& inst, const Coloring& coloring, int max_degree);

/// Minimum Hamilton cycle over all (n-1)!/2 tours, optionally rainbow only.
TourAnswer brute_tsp(const Instance& inst);
TourAnswer brute_rainbow_tsp(const Instance& inst, const Coloring& coloring);

/// Minimum perfect matching over all (n-1)!! matchings; n must be even.
MatchingAnswer brute_perfect_matching(const Instance& inst);
/// Same with pairwise distinct colors; requires coloring.q >= q_min
/// (pass -1 for the default n/2).
MatchingAnswer brute_rainbow_perfect_matching(const Instance& inst, const Coloring& coloring, int q_min = -1);

}  // namespace rainbow::oracle
