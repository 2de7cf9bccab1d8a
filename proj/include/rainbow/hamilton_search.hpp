#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rainbow/instance.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

struct HamArc {
    int to = 0;
    int color = 0;
    double cost = 0.0;
};

/// Graph for the completion search. partner[v] >= 0 marks a forced edge
/// v -- partner[v] (the two ends of a greedy path); forced edges carry no
/// color and must appear in every cycle. `start` must have no partner.
struct HamGraph {
    int nv = 0;
    int start = 0;
    int colors = 0;  // colors are in [0, colors)
    std::vector<int> partner;
    std::vector<std::vector<HamArc>> adj;  // symmetric, forced edges excluded

    void add_edge(int u, int v, int color, double cost);
};

struct HamSearchOptions {
    int restarts = 50;
    std::int64_t steps_per_restart = 1000;
    bool distinct_colors = false;  // enforce distinct colors inside the search
    int exhaustive_max_vertices = 30;
    std::int64_t exhaustive_node_budget = 20'000'000;
};

struct HamSearchStats {
    int restarts_used = 0;
    std::int64_t steps = 0;
    bool exhaustive = false;
};

/// Rotation-extension (Posa) search with restarts; restart i draws its
/// randomness from seed.child(i). Falls back to exhaustive DFS on graphs of
/// at most exhaustive_max_vertices vertices. Returns a vertex cycle starting
/// at `start`, or nothing.
std::optional<std::vector<int>> find_hamilton_cycle(const HamGraph& g, const HamSearchOptions& opts,
                                                    const SeedSpec& seed, HamSearchStats* stats = nullptr);

/// Exhaustive backtracking only; nothing when the node budget runs out.
std::optional<std::vector<int>> exhaustive_hamilton_cycle(const HamGraph& g, bool distinct_colors,
                                                          std::int64_t node_budget);

/// Checks that `cycle` is a Hamilton cycle of g using every forced edge, and,
/// when asked, that its colored edges have distinct colors.
bool is_hamilton_cycle(const HamGraph& g, const std::vector<int>& cycle, bool distinct_colors);

}  // namespace rainbow
