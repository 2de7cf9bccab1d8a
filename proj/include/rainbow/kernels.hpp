#pragma once

#include <span>
#include <vector>

#include "rainbow/instance.hpp"

// Data-parallel inner loops of the tree construction. Every kernel has a
// serial reference and an OpenMP version that must agree bit for bit; both
// write into per-vertex slots, so results never depend on the schedule.
namespace rainbow::kernels {

struct UpwardEdge {
    int upper = -1;  // vertex index, -1 when the slot is empty
    EdgeId edge = 0;
    double length = 0.0;  // in instance units
};

/// Vertex indices sorted by (y, index).
std::vector<int> upward_order(std::span<const Point> points);

/// For each position i < n-1 of `order`, the K shortest edges to vertices at
/// later positions, sorted by (length, EdgeId). Vertices near the top get all
/// of their (fewer than K) upward edges.
std::vector<std::vector<UpwardEdge>> k_shortest_upward_serial(std::span<const Point> points,
                                                              std::span<const int> order, int K);
std::vector<std::vector<UpwardEdge>> k_shortest_upward_omp(std::span<const Point> points, std::span<const int> order,
                                                           int K, int threads = 0);

/// Level of an edge whose length in unit-square units is `unit_length`: the j
/// with B j^2 / sqrt(n) <= unit_length < B (j+1)^2 / sqrt(n); 0 when below
/// level 1 or above `levels`.
int edge_level(double unit_length, int n, double B, int levels);

/// Slot (i, j) of the flat result, i = position in `order`, j = level - 1,
/// holds the shortest upward edge of level j from the vertex at position i.
std::vector<UpwardEdge> level_edges_serial(std::span<const Point> points, std::span<const int> order, double scale,
                                           double B, int levels);
std::vector<UpwardEdge> level_edges_omp(std::span<const Point> points, std::span<const int> order, double scale,
                                        double B, int levels, int threads = 0);

}  // namespace rainbow::kernels
