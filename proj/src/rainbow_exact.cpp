#include "rainbow/rainbow_exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rainbow/matroid_intersection.hpp"

namespace rainbow {

namespace {

struct CostKey {
    double cost;
    EdgeId id;
    bool operator<(const CostKey& o) const { return cost < o.cost || (cost == o.cost && id < o.id); }
};

GroundSet make_ground(const Instance& inst, const Coloring& coloring, const std::vector<CostKey>& keys,
                      std::size_t count) {
    GroundSet g;
    g.n = inst.n();
    g.q = coloring.q;
    for (std::size_t k = 0; k < count; ++k) {
        auto [i, j] = edge_endpoints(keys[k].id);
        g.add(i, j, coloring.color(keys[k].id), keys[k].cost, keys[k].id);
    }
    return g;
}

// Spanning tree rooted at vertex 0 with per-edge reduced weights.
struct RootedTree {
    std::vector<int> parent, depth;
    std::vector<double> up_weight;  // weight of the edge to the parent
    std::vector<int> up_color;

    RootedTree(int n, const std::vector<int>& tu, const std::vector<int>& tv, const std::vector<int>& tcol,
               const std::vector<double>& tw) {
        const auto sz = static_cast<std::size_t>(n);
        std::vector<std::vector<int>> adj(sz);
        for (std::size_t k = 0; k < tu.size(); ++k) {
            adj[tu[k]].push_back(static_cast<int>(k));
            adj[tv[k]].push_back(static_cast<int>(k));
        }
        parent.assign(sz, -1);
        depth.assign(sz, 0);
        up_weight.assign(sz, 0.0);
        up_color.assign(sz, -1);
        std::vector<char> seen(sz, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            const int a = stack.back();
            stack.pop_back();
            for (int k : adj[a]) {
                const int b = tu[k] == a ? tv[k] : tu[k];
                if (seen[b]) continue;
                seen[b] = 1;
                parent[b] = a;
                depth[b] = depth[a] + 1;
                up_weight[b] = tw[k];
                up_color[b] = tcol[k];
                stack.push_back(b);
            }
        }
    }

    template <typename F>
    void for_each_on_path(int a, int b, F&& f) const {
        while (a != b) {
            if (depth[a] < depth[b]) std::swap(a, b);
            f(a);
            a = parent[a];
        }
    }
};

// Optimality certificate for a rainbow spanning tree T: color potentials pi
// such that T is a minimum spanning tree for the reduced costs
// c(e) - pi(color(e)), where unused colors share the potential pi_free, which
// must dominate every used potential. Existence of such pi is the weight
// splitting condition for the two matroids; it is found by solving the
// difference constraints with Bellman-Ford.
struct Certificate {
    std::vector<double> pi;  // per color; unused colors read pi_free
    std::vector<char> used;
    double pi_free = 0.0;

    double of(int color) const { return used[color] ? pi[color] : pi_free; }
};

Certificate certify_on(const GroundSet& g, const std::vector<int>& chosen, double tol) {
    const int q = g.q;
    Certificate cert;
    cert.used.assign(static_cast<std::size_t>(q), 0);
    std::vector<char> member(g.size(), 0);
    std::vector<int> tu, tv, tcol;
    std::vector<double> tw;
    for (int x : chosen) {
        member[x] = 1;
        cert.used[g.color[x]] = 1;
        tu.push_back(g.u[x]);
        tv.push_back(g.v[x]);
        tcol.push_back(g.color[x]);
        tw.push_back(g.cost[x]);
    }
    RootedTree tree(g.n, tu, tv, tcol, tw);

    const int free_node = q;
    struct Arc {
        int from, to;
        double w;
    };
    std::vector<Arc> arcs;
    for (std::size_t x = 0; x < g.size(); ++x) {
        if (member[x]) continue;
        const int target = cert.used[g.color[x]] ? g.color[x] : free_node;
        tree.for_each_on_path(g.u[x], g.v[x], [&](int child) {
            // pi(target) - pi(color y) <= c(x) - c(y)
            arcs.push_back({tree.up_color[child], target, g.cost[x] - tree.up_weight[child]});
        });
    }
    if (static_cast<int>(chosen.size()) < q)
        for (int c = 0; c < q; ++c)
            if (cert.used[c]) arcs.push_back({free_node, c, 0.0});

    std::vector<double> dist(static_cast<std::size_t>(q) + 1, 0.0);
    bool changed = true;
    for (int round = 0; changed; ++round) {
        if (round > q + 2) throw std::logic_error("rainbow MST: no color potentials; solution is not optimal");
        changed = false;
        for (const auto& a : arcs) {
            const double nd = dist[a.from] + a.w;
            if (nd < dist[a.to] - tol) {
                dist[a.to] = nd;
                changed = true;
            }
        }
    }
    cert.pi.assign(dist.begin(), dist.end() - 1);
    cert.pi_free = dist.back();
    return cert;
}

}  // namespace

RainbowTreeResult min_rainbow_spanning_tree(const Instance& inst, const Coloring& coloring,
                                            const RainbowSolveOptions& opts) {
    const int n = inst.n();
    if (n < 1) throw std::invalid_argument("min_rainbow_spanning_tree: need n >= 1");
    check_coloring(coloring, n);
    RainbowTreeResult result;
    if (n == 1) {
        result.feasible = true;
        return result;
    }

    const std::size_t total = inst.edges();
    std::vector<CostKey> keys(total);
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            const EdgeId e = edge_id(i, j);
            keys[e] = {inst.cost(i, j), e};
        }
    std::sort(keys.begin(), keys.end());

    std::size_t count = total;
    if (opts.prune) count = std::min(total, std::max<std::size_t>(opts.candidates_per_vertex * n, 64));

    IntersectionOptions io;
    io.check_invariants = opts.check_invariants;
    double scale = 1.0;
    for (const auto& k : keys) scale = std::max(scale, k.cost);
    const double tol = 1e-11 * scale;

    while (true) {
        ++result.rounds;
        const auto ground = make_ground(inst, coloring, keys, count);
        const auto state = matroid_intersection(ground, n - 1, io);
        result.max_common_rank = state.rank();
        result.candidates = count;
        if (state.rank() < n - 1) {
            if (count == total) return result;
            count = std::min(total, 2 * count);
            continue;
        }

        bool certified = count == total;
        if (!certified) {
            const auto cert = certify_on(ground, state.chosen, tol);
            std::vector<int> tu, tv, tcol;
            std::vector<double> tw;
            double wmax = -std::numeric_limits<double>::infinity();
            for (int x : state.chosen) {
                tu.push_back(ground.u[x]);
                tv.push_back(ground.v[x]);
                tcol.push_back(ground.color[x]);
                tw.push_back(ground.cost[x] - cert.of(ground.color[x]));
                wmax = std::max(wmax, tw.back());
            }
            RootedTree tree(n, tu, tv, tcol, tw);
            certified = true;
            for (std::size_t k = count; k < total && certified; ++k) {
                const double reduced = keys[k].cost - cert.of(coloring.color(keys[k].id));
                if (reduced >= wmax - tol) continue;
                auto [a, b] = edge_endpoints(keys[k].id);
                double path_max = -std::numeric_limits<double>::infinity();
                tree.for_each_on_path(a, b, [&](int child) { path_max = std::max(path_max, tree.up_weight[child]); });
                if (reduced < path_max - tol) certified = false;
            }
        }
        if (!certified) {
            count = std::min(total, 2 * count);
            continue;
        }

        result.feasible = true;
        for (int x : state.chosen) {
            result.tree.edges.push_back(ground.id[x]);
            result.tree.colors_used.push_back(ground.color[x]);
            result.tree.total_cost += ground.cost[x];
        }
        std::sort(result.tree.colors_used.begin(), result.tree.colors_used.end());
        return result;
    }
}

Feasibility rainbow_feasible(const Coloring& coloring, int n) {
    check_coloring(coloring, n);
    if (n <= 1) return {true, 0};
    GroundSet g;
    g.n = n;
    g.q = coloring.q;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) g.add(i, j, coloring.color(i, j), 0.0, edge_id(i, j));
    IntersectionOptions io;
    io.weighted = false;
    const auto state = matroid_intersection(g, n - 1, io);
    return {state.rank() == n - 1, state.rank()};
}

}  // namespace rainbow
