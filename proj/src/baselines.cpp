#include "rainbow/baselines.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "rainbow/union_find.hpp"

namespace rainbow {

SpanningTree kruskal_mst(const Instance& inst) {
    const int n = inst.n();
    if (n == 0) throw std::invalid_argument("kruskal_mst: empty instance");
    const std::size_t m = inst.edges();
    struct Item {
        double cost;
        EdgeId id;
    };
    std::vector<Item> items(m);
    std::size_t k = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++k) items[k] = {inst.cost(i, j), k};
    std::sort(items.begin(), items.end(),
              [](const Item& a, const Item& b) { return a.cost < b.cost || (a.cost == b.cost && a.id < b.id); });

    SpanningTree tree;
    tree.edges.reserve(static_cast<std::size_t>(n - 1));
    UnionFind uf(n);
    for (const auto& it : items) {
        auto [i, j] = edge_endpoints(it.id);
        if (uf.unite(i, j)) {
            tree.edges.push_back(it.id);
            tree.total_cost += it.cost;
            if (tree.edges.size() + 1 == static_cast<std::size_t>(n)) break;
        }
    }
    return tree;
}

Tour tsp_exact(const Instance& inst) {
    const int n = inst.n();
    if (n < 2 || n > tsp_exact_max_n)
        throw std::invalid_argument("tsp_exact: n = " + std::to_string(n) + " outside [2, " +
                                    std::to_string(tsp_exact_max_n) + "]");
    if (n == 2) return Tour{{0, 1}, 2.0 * inst.cost(0, 1)};

    // Vertex 0 is the fixed start; subsets range over vertices 1..n-1.
    const int k = n - 1;
    const std::size_t full = (std::size_t{1} << k) - 1;
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> best((full + 1) * static_cast<std::size_t>(k), inf);
    std::vector<int> parent((full + 1) * static_cast<std::size_t>(k), -1);
    auto at = [k](std::size_t set, int last) { return set * static_cast<std::size_t>(k) + static_cast<std::size_t>(last); };

    for (int v = 0; v < k; ++v) best[at(std::size_t{1} << v, v)] = inst.cost(0, v + 1);
    for (std::size_t set = 1; set <= full; ++set) {
        for (int last = 0; last < k; ++last) {
            if (!(set >> last & 1)) continue;
            const double base = best[at(set, last)];
            if (base == inf) continue;
            for (int next = 0; next < k; ++next) {
                if (set >> next & 1) continue;
                const std::size_t ns = set | (std::size_t{1} << next);
                const double c = base + inst.cost(last + 1, next + 1);
                if (c < best[at(ns, next)]) {
                    best[at(ns, next)] = c;
                    parent[at(ns, next)] = last;
                }
            }
        }
    }
    double opt = inf;
    int last = -1;
    for (int v = 0; v < k; ++v) {
        const double c = best[at(full, v)] + inst.cost(v + 1, 0);
        if (c < opt) {
            opt = c;
            last = v;
        }
    }
    std::vector<int> rev;
    std::size_t set = full;
    while (last >= 0) {
        rev.push_back(last + 1);
        const int p = parent[at(set, last)];
        set &= ~(std::size_t{1} << last);
        last = p;
    }
    Tour t;
    t.order.push_back(0);
    t.order.insert(t.order.end(), rev.rbegin(), rev.rend());
    t.total_cost = tour_cost(inst, t.order);
    return t;
}

namespace {

std::vector<int> nearest_neighbor_tour(const Instance& inst) {
    const int n = inst.n();
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    int cur = 0;
    used[0] = 1;
    order.push_back(0);
    for (int step = 1; step < n; ++step) {
        int best = -1;
        double bc = std::numeric_limits<double>::infinity();
        for (int v = 0; v < n; ++v) {
            if (used[v]) continue;
            const double c = inst.cost(cur, v);
            if (c < bc) {
                bc = c;
                best = v;
            }
        }
        used[best] = 1;
        order.push_back(best);
        cur = best;
    }
    return order;
}

std::vector<std::vector<int>> neighbor_lists(const Instance& inst, int k) {
    const int n = inst.n();
    k = std::min(k, n - 1);
    std::vector<std::vector<int>> lists(static_cast<std::size_t>(n));
    std::vector<int> cand(static_cast<std::size_t>(n - 1));
    for (int a = 0; a < n; ++a) {
        cand.clear();
        for (int b = 0; b < n; ++b)
            if (b != a) cand.push_back(b);
        auto less = [&](int x, int y) {
            const double cx = inst.cost(a, x), cy = inst.cost(a, y);
            return cx < cy || (cx == cy && x < y);
        };
        std::partial_sort(cand.begin(), cand.begin() + k, cand.end(), less);
        lists[a].assign(cand.begin(), cand.begin() + k);
    }
    return lists;
}

// Tour as an array with inverse positions; reversal picks the shorter side.
class ArrayTour {
public:
    explicit ArrayTour(std::vector<int>& order) : t_(order), pos_(order.size()) {
        for (std::size_t i = 0; i < t_.size(); ++i) pos_[t_[i]] = static_cast<int>(i);
    }
    int n() const { return static_cast<int>(t_.size()); }
    int next(int v) const { return t_[(pos_[v] + 1) % n()]; }
    int prev(int v) const { return t_[(pos_[v] + n() - 1) % n()]; }

    // Replace edges (a, next a) and (c, next c) by (a, c) and (next a, next c).
    void exchange(int a, int c) {
        int i = (pos_[a] + 1) % n();
        int j = pos_[c];
        int len = (j - i + n()) % n() + 1;
        if (2 * len > n()) {
            i = (pos_[c] + 1) % n();
            j = pos_[a];
            len = n() - len;
        }
        for (int s = 0; s < len / 2; ++s) {
            const int x = (i + s) % n();
            const int y = (j - s + n()) % n();
            std::swap(t_[x], t_[y]);
            pos_[t_[x]] = x;
            pos_[t_[y]] = y;
        }
    }

private:
    std::vector<int>& t_;
    std::vector<int> pos_;
};

}  // namespace

std::size_t two_opt(const Instance& inst, std::vector<int>& order, const TwoOptOptions& opts) {
    const int n = inst.n();
    if (n < 4) return 0;
    const std::size_t budget = opts.max_moves ? opts.max_moves : 50 * static_cast<std::size_t>(n);
    constexpr double eps = 1e-12;
    const auto nbrs = neighbor_lists(inst, opts.neighbors);
    ArrayTour tour(order);
    std::size_t moves = 0;

    std::vector<char> dont_look(static_cast<std::size_t>(n), 0);
    std::vector<int> queue(order.begin(), order.end());
    std::size_t head = 0;
    while (head < queue.size() && moves < budget) {
        const int a = queue[head++];
        dont_look[a] = 1;
        bool improved = false;
        for (int dir = 0; dir < 2 && !improved; ++dir) {
            const int b = dir == 0 ? tour.next(a) : tour.prev(a);
            const double dab = inst.cost(a, b);
            for (int c : nbrs[a]) {
                const double dac = inst.cost(a, c);
                if (dab - dac <= eps) break;
                const int d = dir == 0 ? tour.next(c) : tour.prev(c);
                if (c == b || d == a) continue;
                const double delta = dac + inst.cost(b, d) - dab - inst.cost(c, d);
                if (delta < -eps) {
                    if (dir == 0)
                        tour.exchange(a, c);
                    else
                        tour.exchange(b, d);
                    ++moves;
                    for (int v : {a, b, c, d})
                        if (dont_look[v]) {
                            dont_look[v] = 0;
                            queue.push_back(v);
                        }
                    improved = true;
                    break;
                }
            }
        }
        if (improved && dont_look[a]) {
            dont_look[a] = 0;
            queue.push_back(a);
        }
    }

    // Full scans certify a true 2-opt local optimum.
    bool changed = true;
    while (changed && moves < budget) {
        changed = false;
        for (int i = 0; i < n - 1 && moves < budget; ++i) {
            for (int j = i + 2; j < n && moves < budget; ++j) {
                if (i == 0 && j == n - 1) continue;
                const int a = order[i], b = order[i + 1], c = order[j], d = order[(j + 1) % n];
                const double delta = inst.cost(a, c) + inst.cost(b, d) - inst.cost(a, b) - inst.cost(c, d);
                if (delta < -eps) {
                    std::reverse(order.begin() + i + 1, order.begin() + j + 1);
                    ++moves;
                    changed = true;
                }
            }
        }
    }
    return moves;
}

bool is_two_opt_optimal(const Instance& inst, const std::vector<int>& order, double tol) {
    const int n = static_cast<int>(order.size());
    for (int i = 0; i < n - 1; ++i)
        for (int j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            const int a = order[i], b = order[i + 1], c = order[j], d = order[(j + 1) % n];
            if (inst.cost(a, c) + inst.cost(b, d) - inst.cost(a, b) - inst.cost(c, d) < -tol) return false;
        }
    return true;
}

Tour tsp_heuristic(const Instance& inst, const TwoOptOptions& opts) {
    if (inst.n() < 3) throw std::invalid_argument("tsp_heuristic: need n >= 3");
    Tour t;
    t.order = nearest_neighbor_tour(inst);
    two_opt(inst, t.order, opts);
    t.total_cost = tour_cost(inst, t.order);
    return t;
}

}  // namespace rainbow
