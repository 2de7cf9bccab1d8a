#include "rainbow/structures.hpp"

#include <algorithm>

#include "rainbow/union_find.hpp"

namespace rainbow {

double tour_cost(const Instance& inst, const std::vector<int>& order) {
    if (order.size() < 2) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < order.size(); ++i) total += inst.cost(order[i], order[(i + 1) % order.size()]);
    return total;
}

double edges_cost(const Instance& inst, const std::vector<EdgeId>& edges) {
    double total = 0.0;
    for (auto e : edges) total += inst.cost(e);
    return total;
}

bool is_spanning_tree(int n, const std::vector<EdgeId>& edges) {
    if (n == 0) return edges.empty();
    if (edges.size() != static_cast<std::size_t>(n - 1)) return false;
    UnionFind uf(n);
    for (auto e : edges) {
        auto [i, j] = edge_endpoints(e);
        if (j >= n || !uf.unite(i, j)) return false;
    }
    return true;
}

bool is_permutation(int n, const std::vector<int>& order) {
    if (order.size() != static_cast<std::size_t>(n)) return false;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : order) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

bool is_rainbow_spanning_tree(int n, const std::vector<EdgeId>& edges, const Coloring& coloring) {
    if (!is_spanning_tree(n, edges)) return false;
    std::vector<int> cols;
    cols.reserve(edges.size());
    for (auto e : edges) cols.push_back(coloring.color(e));
    std::sort(cols.begin(), cols.end());
    return std::adjacent_find(cols.begin(), cols.end()) == cols.end();
}

bool is_rainbow_tour(int n, const std::vector<int>& order, const Coloring& coloring) {
    if (n < 3 || !is_permutation(n, order)) return false;
    std::vector<int> cols;
    cols.reserve(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) cols.push_back(coloring.color(order[i], order[(i + 1) % order.size()]));
    std::sort(cols.begin(), cols.end());
    return std::adjacent_find(cols.begin(), cols.end()) == cols.end();
}

}  // namespace rainbow
