#include "rainbow/tree_construct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rainbow/matching.hpp"

namespace rainbow {

namespace {

void require_euclidean(const Instance& inst) {
    if (!inst.is_euclidean()) throw std::invalid_argument("tree construction needs a Euclidean instance");
    if (inst.n() < 2) throw std::invalid_argument("tree construction needs n >= 2");
}

int right_side(const Coloring& coloring, int n) { return std::min(coloring.q, n - 1); }

}  // namespace

UpwardOrder build_upward_order(const Instance& inst) {
    UpwardOrder up;
    up.order = kernels::upward_order(inst.points());
    up.pos.assign(up.order.size(), 0);
    for (std::size_t i = 0; i < up.order.size(); ++i) up.pos[up.order[i]] = static_cast<int>(i);
    return up;
}

int level_count(int n) {
    if (n < 2) return 0;
    const double l = std::log(static_cast<double>(n));
    return static_cast<int>(std::ceil(l * l));
}

std::vector<GammaEdge> build_E1(const Instance& inst, const UpwardOrder& order, const Coloring& coloring,
                                const TreeConstructOptions& opts) {
    require_euclidean(inst);
    if (opts.K < 1) throw std::invalid_argument("K must be at least 1");
    const int colors = right_side(coloring, inst.n());
    auto rows = opts.parallel ? kernels::k_shortest_upward_omp(inst.points(), order.order, opts.K, opts.threads)
                              : kernels::k_shortest_upward_serial(inst.points(), order.order, opts.K);
    std::vector<GammaEdge> out;
    out.reserve(rows.size() * static_cast<std::size_t>(opts.K));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (const auto& u : rows[i]) {
            const int c = coloring.color(u.edge);
            if (c >= colors) continue;
            out.push_back({order.order[i], u.upper, c, u.edge, u.length, GammaSource::e1});
        }
    }
    return out;
}

E2Result build_EA_and_E2(const Instance& inst, const UpwardOrder& order, const Coloring& coloring,
                         const TreeConstructOptions& opts, const SeedSpec& seed) {
    require_euclidean(inst);
    if (!(opts.B > 0.0)) throw std::invalid_argument("B must be positive");
    if (opts.K < 1) throw std::invalid_argument("K must be at least 1");
    const int n = inst.n();
    const int levels = level_count(n);
    const int colors = right_side(coloring, n);

    auto slots = opts.parallel
                     ? kernels::level_edges_omp(inst.points(), order.order, inst.scale(), opts.B, levels, opts.threads)
                     : kernels::level_edges_serial(inst.points(), order.order, inst.scale(), opts.B, levels);

    E2Result res;
    auto& ls = res.level_set;
    ls.levels = levels;
    const int rows = n - 1;
    for (int i = 0; i < rows; ++i) {
        int filled = 0;
        for (int j = 0; j < levels; ++j) {
            const auto& s = slots[static_cast<std::size_t>(i) * levels + j];
            if (s.upper < 0) continue;
            ++filled;
            ls.edges.push_back({order.order[i], s.upper, coloring.color(s.edge), s.edge, s.length, GammaSource::e2});
            ls.edge_level.push_back(j + 1);
        }
        if (filled > 0) ++ls.members;
        if (filled == levels) ++ls.strict_members;
    }

    // Rank key inside (color, level): a hash of the edge under that pair's
    // seed, i.e. an independent random permutation per color and level.
    const std::uint64_t tb = seed.stream_seed("tiebreak");
    struct Keyed {
        int color;
        int level;
        std::uint64_t key;
        std::size_t idx;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(ls.edges.size());
    for (std::size_t k = 0; k < ls.edges.size(); ++k) {
        const auto& e = ls.edges[k];
        if (e.color >= colors) continue;
        const std::uint64_t pair_seed =
            mix_seed(tb, (static_cast<std::uint64_t>(e.color) << 32) | static_cast<std::uint32_t>(ls.edge_level[k]));
        keyed.push_back({e.color, ls.edge_level[k], mix_seed(pair_seed, e.edge), k});
    }
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        if (a.color != b.color) return a.color < b.color;
        if (a.level != b.level) return a.level < b.level;
        if (a.key != b.key) return a.key < b.key;
        return a.idx < b.idx;
    });
    int current = -1, taken = 0;
    for (const auto& k : keyed) {
        if (k.color != current) {
            current = k.color;
            taken = 0;
        }
        if (taken >= opts.K) continue;
        ++taken;
        res.e2.push_back(ls.edges[k.idx]);
    }
    return res;
}

GammaMatching match_and_extract(const Instance& inst, const UpwardOrder& order, int colors,
                                const std::vector<GammaEdge>& gamma) {
    const int n = inst.n();
    const int left = n - 1;
    GammaMatching out;
    if (left <= 0) {
        out.perfect = true;
        return out;
    }

    // Cheapest geometric edge per (vertex, color); adjacency cheapest first.
    std::vector<const GammaEdge*> sorted;
    sorted.reserve(gamma.size());
    for (const auto& g : gamma) sorted.push_back(&g);
    std::sort(sorted.begin(), sorted.end(), [&](const GammaEdge* a, const GammaEdge* b) {
        const int pa = order.pos[a->lower], pb = order.pos[b->lower];
        if (pa != pb) return pa < pb;
        if (a->length != b->length) return a->length < b->length;
        return a->edge < b->edge;
    });
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(left));
    std::vector<std::vector<const GammaEdge*>> via(static_cast<std::size_t>(left));
    std::vector<int> seen(static_cast<std::size_t>(std::max(colors, 0)), -1);
    for (const GammaEdge* g : sorted) {
        const int p = order.pos[g->lower];
        if (p >= left) throw std::logic_error("Gamma edge leaves the topmost vertex");
        if (g->color < 0 || g->color >= colors) continue;
        if (seen[g->color] == p) continue;
        seen[g->color] = p;
        adj[p].push_back(g->color);
        via[p].push_back(g);
    }

    auto m = hopcroft_karp(left, colors, adj);
    out.size = m.size;
    out.deficiency = left - m.size;
    out.perfect = m.size == left;
    if (!out.perfect) return out;

    for (int p = 0; p < left; ++p) {
        const int c = m.match_left[p];
        const auto it = std::find(adj[p].begin(), adj[p].end(), c);
        const GammaEdge* g = via[p][static_cast<std::size_t>(it - adj[p].begin())];
        out.tree.edges.push_back(g->edge);
        out.tree.colors_used.push_back(c);
        out.tree.total_cost += g->length;
    }
    return out;
}

TreeConstructResult construct_tree(const Instance& inst, const Coloring& coloring, const TreeConstructOptions& opts,
                                   const SeedSpec& seed) {
    require_euclidean(inst);
    check_coloring(coloring, inst.n());
    const int n = inst.n();
    const int colors = right_side(coloring, n);

    TreeConstructResult res;
    auto& d = res.diag;
    d.standard_palette = coloring.q == n - 1;
    d.colors = colors;

    const auto order = build_upward_order(inst);
    auto gamma = build_E1(inst, order, coloring, opts);
    d.e1 = gamma.size();
    auto e2 = build_EA_and_E2(inst, order, coloring, opts, seed);
    d.e2 = e2.e2.size();
    d.ea = e2.level_set.edges.size();
    d.levels = e2.level_set.levels;
    d.A_strict = e2.level_set.strict_members;
    d.A_members = e2.level_set.members;
    gamma.insert(gamma.end(), e2.e2.begin(), e2.e2.end());
    for (const auto& g : gamma) d.gamma_weight += g.length;

    auto m = match_and_extract(inst, order, colors, gamma);
    d.matching_size = m.size;
    d.deficiency = m.deficiency;
    res.success = m.perfect;
    if (res.success) {
        if (!is_rainbow_spanning_tree(n, m.tree.edges, coloring))
            throw std::logic_error("matched Gamma edges do not form a rainbow spanning tree");
        res.tree = std::move(m.tree);
    }
    return res;
}

}  // namespace rainbow
