#pragma once

#include <vector>

namespace rainbow {

/// Maximum bipartite matching by Hopcroft-Karp. adj[l] lists right vertices in
/// preference order; DFS tries them in that order, so cheaper-first lists give
/// cheaper matchings. Returns match_left (-1 when unmatched).
struct BipartiteMatching {
    std::vector<int> match_left, match_right;
    int size = 0;
};

BipartiteMatching hopcroft_karp(int left, int right, const std::vector<std::vector<int>>& adj);

}  // namespace rainbow
