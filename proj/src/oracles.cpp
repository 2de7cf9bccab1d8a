#include "rainbow/oracles.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rainbow::oracle {

namespace {

void require_range(const char* what, int n, int lo, int hi) {
    if (n < lo || n > hi)
        throw std::invalid_argument(std::string(what) + ": n = " + std::to_string(n) + " outside [" +
                                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

std::vector<std::pair<int, int>> decode_pruefer(int n, const std::vector<int>& seq, std::vector<int>& degree) {
    degree.assign(static_cast<std::size_t>(n), 1);
    for (int a : seq) ++degree[a];
    std::vector<int> deg = degree;
    std::vector<std::pair<int, int>> edges;
    for (int a : seq) {
        int leaf = 0;
        while (deg[leaf] != 1) ++leaf;
        edges.emplace_back(std::min(leaf, a), std::max(leaf, a));
        --deg[leaf];
        --deg[a];
    }
    int u = -1, v = -1;
    for (int i = 0; i < n; ++i)
        if (deg[i] == 1) (u < 0 ? u : v) = i;
    edges.emplace_back(u, v);
    return edges;
}

bool distinct_colors(const Coloring& coloring, const std::vector<std::pair<int, int>>& edges) {
    std::vector<int> cols;
    for (auto [i, j] : edges) cols.push_back(coloring.color(i, j));
    std::sort(cols.begin(), cols.end());
    return std::adjacent_find(cols.begin(), cols.end()) == cols.end();
}

TreeAnswer best_tree(const Instance& inst, const Coloring* coloring, int max_degree) {
    const int n = inst.n();
    require_range("tree oracle", n, 1, max_tree_n);
    TreeAnswer best;
    if (n == 1) {
        best.feasible = true;
        return best;
    }
    double best_cost = std::numeric_limits<double>::infinity();
    for_each_labeled_tree(n, [&](const std::vector<std::pair<int, int>>& edges, const std::vector<int>& degree) {
        if (max_degree > 0 && *std::max_element(degree.begin(), degree.end()) > max_degree) return;
        if (coloring && !distinct_colors(*coloring, edges)) return;
        double c = 0.0;
        for (auto [i, j] : edges) c += inst.cost(i, j);
        if (c < best_cost) {
            best_cost = c;
            best.feasible = true;
            best.cost = c;
            best.edges.clear();
            for (auto [i, j] : edges) best.edges.push_back(edge_id(i, j));
        }
    });
    std::sort(best.edges.begin(), best.edges.end());
    return best;
}

TourAnswer best_tour(const Instance& inst, const Coloring* coloring) {
    const int n = inst.n();
    require_range("tour oracle", n, 3, max_tour_n);
    std::vector<int> rest(static_cast<std::size_t>(n - 1));
    std::iota(rest.begin(), rest.end(), 1);
    TourAnswer best;
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<int> cols(static_cast<std::size_t>(n));
    do {
        if (rest.front() > rest.back()) continue;  // each cycle once per direction
        double c = inst.cost(0, rest.front()) + inst.cost(rest.back(), 0);
        for (std::size_t k = 0; k + 1 < rest.size(); ++k) c += inst.cost(rest[k], rest[k + 1]);
        if (!(c < best_cost)) continue;
        if (coloring) {
            cols[0] = coloring->color(0, rest.front());
            cols[1] = coloring->color(rest.back(), 0);
            for (std::size_t k = 0; k + 1 < rest.size(); ++k) cols[k + 2] = coloring->color(rest[k], rest[k + 1]);
            std::sort(cols.begin(), cols.end());
            if (std::adjacent_find(cols.begin(), cols.end()) != cols.end()) continue;
        }
        best_cost = c;
        best.feasible = true;
        best.cost = c;
        best.order.assign(1, 0);
        best.order.insert(best.order.end(), rest.begin(), rest.end());
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
}

void enumerate_matchings(std::vector<int>& free_vertices, std::vector<std::pair<int, int>>& current,
                         const std::function<void(const std::vector<std::pair<int, int>>&)>& f) {
    if (free_vertices.empty()) {
        f(current);
        return;
    }
    const int a = free_vertices.front();
    for (std::size_t k = 1; k < free_vertices.size(); ++k) {
        const int b = free_vertices[k];
        std::vector<int> rest;
        for (std::size_t t = 1; t < free_vertices.size(); ++t)
            if (t != k) rest.push_back(free_vertices[t]);
        current.emplace_back(a, b);
        enumerate_matchings(rest, current, f);
        current.pop_back();
    }
}

MatchingAnswer best_matching(const Instance& inst, const Coloring* coloring) {
    const int n = inst.n();
    if (n % 2 != 0) throw std::invalid_argument("matching oracle: odd n = " + std::to_string(n));
    require_range("matching oracle", n, 0, max_matching_n);
    MatchingAnswer best;
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::pair<int, int>> cur;
    enumerate_matchings(all, cur, [&](const std::vector<std::pair<int, int>>& m) {
        if (coloring && !distinct_colors(*coloring, m)) return;
        double c = 0.0;
        for (auto [i, j] : m) c += inst.cost(i, j);
        if (c < best_cost) {
            best_cost = c;
            best.feasible = true;
            best.cost = c;
            best.pairs = m;
        }
    });
    return best;
}

}  // namespace

void for_each_labeled_tree(int n, const std::function<void(const std::vector<std::pair<int, int>>&,
                                                           const std::vector<int>&)>& f) {
    if (n < 2) return;
    std::vector<int> seq(static_cast<std::size_t>(n - 2), 0);
    std::vector<int> degree;
    while (true) {
        f(decode_pruefer(n, seq, degree), degree);
        std::size_t k = 0;
        while (k < seq.size() && ++seq[k] == n) seq[k++] = 0;
        if (k == seq.size()) break;
    }
}

TreeAnswer brute_mst(const Instance& inst) { return best_tree(inst, nullptr, 0); }

TreeAnswer brute_rainbow_mst(const Instance& inst, const Coloring& coloring) { return best_tree(inst, &coloring, 0); }

TreeAnswer brute_rainbow_degree_bounded_mst(const Instance& inst, const Coloring& coloring, int max_degree) {
    if (max_degree < 2 && inst.n() >= 3) {
        require_range("tree oracle", inst.n(), 1, max_tree_n);
        return {};
    }
    return best_tree(inst, &coloring, std::max(max_degree, 1));
}

TourAnswer brute_tsp(const Instance& inst) { return best_tour(inst, nullptr); }

TourAnswer brute_rainbow_tsp(const Instance& inst, const Coloring& coloring) { return best_tour(inst, &coloring); }

MatchingAnswer brute_perfect_matching(const Instance& inst) { return best_matching(inst, nullptr); }

MatchingAnswer brute_rainbow_perfect_matching(const Instance& inst, const Coloring& coloring, int q_min) {
    if (q_min < 0) q_min = inst.n() / 2;
    if (coloring.q < q_min)
        throw std::invalid_argument("rainbow matching oracle: q = " + std::to_string(coloring.q) + " below " +
                                    std::to_string(q_min));
    return best_matching(inst, &coloring);
}

}  // namespace rainbow::oracle
