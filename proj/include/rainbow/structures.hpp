#pragma once

#include <vector>

#include "rainbow/instance.hpp"

namespace rainbow {

struct SpanningTree {
    std::vector<EdgeId> edges;
    double total_cost = 0.0;
};

struct Tour {
    std::vector<int> order;
    double total_cost = 0.0;
};

/// Spanning tree whose edges carry pairwise distinct colors.
struct RainbowTree {
    std::vector<EdgeId> edges;
    std::vector<int> colors_used;
    double total_cost = 0.0;
};

/// Hamilton cycle whose n edges carry pairwise distinct colors.
struct RainbowTour {
    std::vector<int> order;
    double total_cost = 0.0;
};

double tour_cost(const Instance& inst, const std::vector<int>& order);
double edges_cost(const Instance& inst, const std::vector<EdgeId>& edges);

bool is_spanning_tree(int n, const std::vector<EdgeId>& edges);
bool is_permutation(int n, const std::vector<int>& order);

/// Edge set is a spanning tree and no two edges share a color.
bool is_rainbow_spanning_tree(int n, const std::vector<EdgeId>& edges, const Coloring& coloring);

/// Order is a Hamilton cycle on [n] whose n edges (wraparound included) have
/// distinct colors.
bool is_rainbow_tour(int n, const std::vector<int>& order, const Coloring& coloring);

}  // namespace rainbow
