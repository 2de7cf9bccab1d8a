#pragma once

#include <vector>

#include "rainbow/instance.hpp"

namespace rainbow {

/// Candidate edges for the intersection of the graphic matroid on n vertices
/// with the partition matroid "at most one edge per color".
struct GroundSet {
    int n = 0;
    int q = 0;
    std::vector<int> u, v, color;
    std::vector<double> cost;
    std::vector<EdgeId> id;

    std::size_t size() const { return cost.size(); }
    void add(int a, int b, int c, double w, EdgeId e) {
        u.push_back(a);
        v.push_back(b);
        color.push_back(c);
        cost.push_back(w);
        id.push_back(e);
    }
};

struct IntersectionOptions {
    // false: plain cardinality intersection (all lengths zero, BFS order).
    bool weighted = true;
    // Re-verify forest + distinct colors after every augmentation.
    bool check_invariants = true;
};

/// Current common independent set: forest on the vertices, one edge per color.
struct MatroidIntersectionState {
    std::vector<int> chosen;  // ground-set indices
    double cost = 0.0;
    int augmentations = 0;
    int rank() const { return static_cast<int>(chosen.size()); }
};

/// Grows a common independent set one augmentation at a time along shortest
/// (by total length, then by number of arcs) paths in the exchange graph.
/// Elements outside the set have length cost(x), elements inside -cost(y), so
/// each intermediate set is a cheapest common independent set of its size.
/// Stops at `target` elements or when no augmenting path exists, in which case
/// the set has maximum cardinality.
MatroidIntersectionState matroid_intersection(const GroundSet& ground, int target,
                                              const IntersectionOptions& opts = {});

/// Checks forest + distinct colors; throws std::logic_error naming the broken
/// invariant.
void check_common_independent(const GroundSet& ground, const std::vector<int>& chosen);

}  // namespace rainbow
