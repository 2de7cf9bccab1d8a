#pragma once

#include <cstddef>

#include "rainbow/instance.hpp"
#include "rainbow/structures.hpp"

namespace rainbow {

struct RainbowTreeResult {
    bool feasible = false;
    RainbowTree tree;            // valid only when feasible
    int max_common_rank = 0;     // largest rainbow forest size
    std::size_t candidates = 0;  // edges in the final candidate set
    int rounds = 0;              // candidate-set enlargements + 1
};

struct RainbowSolveOptions {
    // Solve on the cheapest edges first and certify the result against the full
    // edge set with color potentials; enlarge and repeat when that fails.
    bool prune = true;
    std::size_t candidates_per_vertex = 8;
    bool check_invariants = true;
};

/// Minimum-cost rainbow spanning tree by weighted matroid intersection of the
/// graphic matroid and the color partition matroid. Infeasibility is a value;
/// a coloring that does not match the instance throws std::invalid_argument.
RainbowTreeResult min_rainbow_spanning_tree(const Instance& inst, const Coloring& coloring,
                                            const RainbowSolveOptions& opts = {});

struct Feasibility {
    bool feasible = false;
    int max_common_rank = 0;
};

/// Whether K_n with this coloring has a rainbow spanning tree (cardinality
/// matroid intersection).
Feasibility rainbow_feasible(const Coloring& coloring, int n);

}  // namespace rainbow
