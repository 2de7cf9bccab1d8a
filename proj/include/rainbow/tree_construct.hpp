#pragma once

#include <cstdint>
#include <vector>

#include "rainbow/instance.hpp"
#include "rainbow/kernels.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/structures.hpp"

namespace rainbow {

/// Vertices sorted by (y, index). pos[v] is the position of v; the upward
/// neighbourhood of order[i] is order[i+1..n-1].
struct UpwardOrder {
    std::vector<int> order;
    std::vector<int> pos;
};

UpwardOrder build_upward_order(const Instance& inst);

enum class GammaSource : std::uint8_t { e1, e2 };

/// One edge (x, c) of the points-by-colors graph, annotated with the upward
/// geometric edge it came from. `lower` is a vertex index.
struct GammaEdge {
    int lower = 0;
    int upper = 0;
    int color = 0;
    EdgeId edge = 0;
    double length = 0.0;
    GammaSource source = GammaSource::e1;
};

struct TreeConstructOptions {
    int K = 20;
    double B = 2.0;
    int threads = 1;  // kernel threads; 0 = OpenMP default
    bool parallel = false;
};

/// Number of levels, ceil(ln(n)^2).
int level_count(int n);

/// K shortest upward edges of each non-top vertex (all of them near the top).
/// Colors outside the right side [0, min(q, n-1)) are dropped.
std::vector<GammaEdge> build_E1(const Instance& inst, const UpwardOrder& order, const Coloring& coloring,
                                const TreeConstructOptions& opts);

struct LevelEdgeSet {
    int levels = 0;
    std::vector<GammaEdge> edges;  // E_A, one per (vertex, nonempty level)
    std::vector<int> edge_level;   // parallel to edges
    int strict_members = 0;        // vertices with an edge at every level 1..L
    int members = 0;               // vertices with at least one level edge
};

struct E2Result {
    LevelEdgeSet level_set;
    std::vector<GammaEdge> e2;
};

/// Shortest upward edge per (vertex, level), then for every color the K
/// lowest-level such edges; ties inside a level follow a per-(color, level)
/// random order drawn from the "tiebreak" substream of `seed`.
E2Result build_EA_and_E2(const Instance& inst, const UpwardOrder& order, const Coloring& coloring,
                         const TreeConstructOptions& opts, const SeedSpec& seed);

struct GammaMatching {
    bool perfect = false;
    int size = 0;
    int deficiency = 0;  // (n-1) - size
    RainbowTree tree;    // filled when perfect
};

/// Maximum matching of non-top vertices to colors over the given Gamma edges,
/// cheapest edge first per vertex. A perfect matching gives every non-top
/// vertex one upward parent edge with its own color: a rainbow spanning tree.
GammaMatching match_and_extract(const Instance& inst, const UpwardOrder& order, int colors,
                                const std::vector<GammaEdge>& gamma);

struct TreeDiagnostics {
    std::size_t e1 = 0;
    std::size_t e2 = 0;
    std::size_t ea = 0;
    double gamma_weight = 0.0;
    int matching_size = 0;
    int deficiency = 0;
    int levels = 0;
    int A_strict = 0;
    int A_members = 0;
    int colors = 0;
    bool standard_palette = true;  // q == n-1
};

struct TreeConstructResult {
    bool success = false;
    RainbowTree tree;
    TreeDiagnostics diag;
};

/// Full pipeline. Failure to find a perfect matching is reported in the
/// result, not thrown. Requires n >= 2 and a Euclidean instance.
TreeConstructResult construct_tree(const Instance& inst, const Coloring& coloring,
                                   const TreeConstructOptions& opts, const SeedSpec& seed);

}  // namespace rainbow
