#include "rainbow/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <omp.h>

namespace rainbow::kernels {

namespace {

bool shorter(const UpwardEdge& a, const UpwardEdge& b) {
    return a.length < b.length || (a.length == b.length && a.edge < b.edge);
}

double dist(const Point& a, const Point& b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

void k_shortest_row(std::span<const Point> pts, std::span<const int> order, int K, int i,
                    std::vector<UpwardEdge>& out) {
    const int n = static_cast<int>(order.size());
    const int x = order[i];
    out.clear();
    out.reserve(static_cast<std::size_t>(K) + 1);
    for (int k = i + 1; k < n; ++k) {
        const int y = order[k];
        UpwardEdge e{y, edge_id(x, y), dist(pts[x], pts[y])};
        if (static_cast<int>(out.size()) < K) {
            out.push_back(e);
            std::push_heap(out.begin(), out.end(), shorter);
        } else if (shorter(e, out.front())) {
            std::pop_heap(out.begin(), out.end(), shorter);
            out.back() = e;
            std::push_heap(out.begin(), out.end(), shorter);
        }
    }
    std::sort_heap(out.begin(), out.end(), shorter);
}

void level_row(std::span<const Point> pts, std::span<const int> order, double scale, double B, int levels, int i,
               UpwardEdge* slots) {
    const int n = static_cast<int>(order.size());
    const int x = order[i];
    for (int k = i + 1; k < n; ++k) {
        const int y = order[k];
        const double len = dist(pts[x], pts[y]);
        const int j = edge_level(len / scale, n, B, levels);
        if (j == 0) continue;
        UpwardEdge e{y, edge_id(x, y), len};
        auto& slot = slots[j - 1];
        if (slot.upper < 0 || shorter(e, slot)) slot = e;
    }
}

}  // namespace

std::vector<int> upward_order(std::span<const Point> points) {
    std::vector<int> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return points[a].y < points[b].y; });
    return order;
}

std::vector<std::vector<UpwardEdge>> k_shortest_upward_serial(std::span<const Point> points,
                                                              std::span<const int> order, int K) {
    const int rows = std::max(0, static_cast<int>(order.size()) - 1);
    std::vector<std::vector<UpwardEdge>> out(static_cast<std::size_t>(rows));
    for (int i = 0; i < rows; ++i) k_shortest_row(points, order, K, i, out[i]);
    return out;
}

std::vector<std::vector<UpwardEdge>> k_shortest_upward_omp(std::span<const Point> points, std::span<const int> order,
                                                           int K, int threads) {
    const int rows = std::max(0, static_cast<int>(order.size()) - 1);
    std::vector<std::vector<UpwardEdge>> out(static_cast<std::size_t>(rows));
    if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 32) num_threads(threads)
    for (int i = 0; i < rows; ++i) k_shortest_row(points, order, K, i, out[i]);
    return out;
}

int edge_level(double unit_length, int n, double B, int levels) {
    if (n <= 0 || !(B > 0.0)) return 0;
    const double t = unit_length * std::sqrt(static_cast<double>(n)) / B;
    if (t < 1.0) return 0;
    auto j = static_cast<long long>(std::floor(std::sqrt(t)));
    while (static_cast<double>((j + 1) * (j + 1)) <= t) ++j;
    while (j > 0 && static_cast<double>(j * j) > t) --j;
    if (j < 1 || j > levels) return 0;
    return static_cast<int>(j);
}

std::vector<UpwardEdge> level_edges_serial(std::span<const Point> points, std::span<const int> order, double scale,
                                           double B, int levels) {
    const int rows = std::max(0, static_cast<int>(order.size()) - 1);
    std::vector<UpwardEdge> out(static_cast<std::size_t>(rows) * static_cast<std::size_t>(levels));
    for (int i = 0; i < rows; ++i)
        level_row(points, order, scale, B, levels, i, out.data() + static_cast<std::size_t>(i) * levels);
    return out;
}

std::vector<UpwardEdge> level_edges_omp(std::span<const Point> points, std::span<const int> order, double scale,
                                        double B, int levels, int threads) {
    const int rows = std::max(0, static_cast<int>(order.size()) - 1);
    std::vector<UpwardEdge> out(static_cast<std::size_t>(rows) * static_cast<std::size_t>(levels));
    if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 32) num_threads(threads)
    for (int i = 0; i < rows; ++i)
        level_row(points, order, scale, B, levels, i, out.data() + static_cast<std::size_t>(i) * levels);
    return out;
}

}  // namespace rainbow::kernels
