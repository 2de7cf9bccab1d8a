#include "rainbow/tour_greedy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rainbow/union_find.hpp"

namespace rainbow {

int palette_size(int n, double eps) {
    const double x = (1.0 + eps) * static_cast<double>(n);
    const double near = std::round(x);
    if (std::abs(x - near) <= 1e-9 * std::max(1.0, x)) return static_cast<int>(near);
    return static_cast<int>(std::ceil(x));
}

Reserve select_reserve(int n, double C) {
    if (!(C > 0.0)) throw std::invalid_argument("reserve constant C must be positive");
    const int r = static_cast<int>(std::ceil(C * std::sqrt(static_cast<double>(n)) - 1e-12));
    if (r < 1 || 2 * r >= n)
        throw std::invalid_argument("reserve size r = " + std::to_string(r) + " must satisfy 1 <= r < n/2 (n = " +
                                    std::to_string(n) + ")");
    Reserve res;
    res.r = r;
    for (int v = 0; v < n; ++v) (v < r ? res.reserve : res.rest).push_back(v);
    return res;
}

void check_path_system(const PathSystem& ps, const Coloring& coloring) {
    UnionFind uf(ps.n);
    std::vector<int> deg(static_cast<std::size_t>(ps.n), 0);
    std::vector<char> seen(static_cast<std::size_t>(coloring.q), 0);
    for (EdgeId e : ps.edges) {
        auto [u, v] = edge_endpoints(e);
        if (++deg[u] > 2 || ++deg[v] > 2) throw std::logic_error("path system has a vertex of degree 3");
        if (!uf.unite(u, v)) throw std::logic_error("path system has a cycle");
        const int c = coloring.color(e);
        if (seen[c]) throw std::logic_error("path system repeats a color");
        seen[c] = 1;
    }
}

PathSystem greedy_paths(const Instance& inst, const Coloring& coloring, const Reserve& res, int k0, double C,
                        bool check_invariants) {
    const int n = inst.n();
    const int np = static_cast<int>(res.rest.size());
    if (k0 < 0 || k0 > std::max(0, np - 1)) throw std::invalid_argument("k0 out of range");

    PathSystem ps;
    ps.n = n;
    ps.nbr.assign(static_cast<std::size_t>(n), {-1, -1});
    ps.color_used.assign(static_cast<std::size_t>(coloring.q), 0);
    ps.components = np;
    if (k0 == 0) return ps;

    struct Cand {
        double cost;
        EdgeId id;
        bool operator<(const Cand& o) const { return cost < o.cost || (cost == o.cost && id < o.id); }
    };
    std::vector<Cand> cand;
    cand.reserve(edge_count(np));
    for (int a = 0; a < np; ++a)
        for (int b = a + 1; b < np; ++b) {
            const int u = res.rest[a], v = res.rest[b];
            cand.push_back({inst.cost(u, v), edge_id(u, v)});
        }

    UnionFind uf(n);
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double to_unit = 1.0 / inst.scale();
    int accepted = 0;

    // Sort lazily in growing chunks: most acceptances come from the cheapest
    // few edges per vertex.
    std::size_t done = 0;
    std::size_t chunk = std::min(cand.size(), static_cast<std::size_t>(16) * static_cast<std::size_t>(np));
    while (accepted < k0 && done < cand.size()) {
        const std::size_t stop = std::min(cand.size(), done + chunk);
        if (stop < cand.size()) std::nth_element(cand.begin() + done, cand.begin() + stop, cand.end());
        std::sort(cand.begin() + done, cand.begin() + stop);
        for (std::size_t k = done; k < stop && accepted < k0; ++k) {
            ++ps.scanned;
            auto [u, v] = edge_endpoints(cand[k].id);
            if (ps.degree(u) == 2 || ps.degree(v) == 2) {
                ++ps.skipped_degree;
                continue;
            }
            if (uf.connected(u, v)) {
                ++ps.skipped_cycle;
                continue;
            }
            const int c = coloring.color(cand[k].id);
            if (ps.color_used[c]) {
                ++ps.skipped_color;
                continue;
            }
            const double lambda = C * sqrt_n / static_cast<double>(np - accepted);
            if (cand[k].cost * to_unit > lambda) ++ps.lambda_exceed;
            uf.unite(u, v);
            ps.nbr[u][ps.nbr[u][0] < 0 ? 0 : 1] = v;
            ps.nbr[v][ps.nbr[v][0] < 0 ? 0 : 1] = u;
            ps.color_used[c] = 1;
            ps.edges.push_back(cand[k].id);
            ps.cost += cand[k].cost;
            --ps.components;
            ++accepted;
            if (check_invariants) {
                check_path_system(ps, coloring);
                if (ps.components != np - accepted) throw std::logic_error("component count drifted");
            }
        }
        done = stop;
        chunk *= 2;
    }
    ps.stalled = accepted < k0;
    return ps;
}

std::vector<int> path_vertices(const PathSystem& ps, int from) {
    std::vector<int> out{from};
    int prev = -1, cur = from;
    while (true) {
        int next = -1;
        for (int w : ps.nbr[cur])
            if (w >= 0 && w != prev) next = w;
        if (next < 0) break;
        prev = cur;
        cur = next;
        out.push_back(cur);
    }
    return out;
}

CompletionGraph build_completion(const Instance& inst, const Coloring& coloring, const Reserve& res,
                                 const PathSystem& ps) {
    CompletionGraph cg;
    cg.Y = res.reserve;
    std::vector<int> ports;
    for (int v : res.rest) {
        const int d = ps.degree(v);
        if (d == 0) {
            cg.isolated.push_back(v);
            ports.push_back(v);
        } else if (d == 1) {
            const int other = path_vertices(ps, v).back();
            if (v < other) cg.paths.push_back({v, other});
            ports.push_back(v);
        }
    }
    int used = 0;
    for (char f : ps.color_used) used += f;
    cg.fresh_colors = coloring.q - used;

    std::vector<int> usage(static_cast<std::size_t>(coloring.q), 0);
    for (int y : cg.Y)
        for (int x : ports) {
            const int c = coloring.color(y, x);
            const int idx = static_cast<int>(cg.edges.size());
            cg.edges.push_back({y, x, c, inst.cost(y, x)});
            if (!ps.color_used[c]) {
                cg.gamma1.push_back(idx);
                ++usage[c];
            }
        }
    std::vector<int> best(static_cast<std::size_t>(coloring.q), -1);
    for (int idx : cg.gamma1) {
        const auto& e = cg.edges[idx];
        if (usage[e.color] == 1) cg.gamma2.push_back(idx);
        if (usage[e.color] <= 2) {
            int& b = best[e.color];
            if (b < 0 || e.cost < cg.edges[b].cost) b = idx;
        }
    }
    for (int idx : cg.gamma1)
        if (best[cg.edges[idx].color] == idx) cg.gamma_le2.push_back(idx);

    if (cg.fresh_colors > 0) {
        cg.mean_fresh_usage = static_cast<double>(cg.gamma1.size()) / cg.fresh_colors;
        cg.expected_usage_bound = 2.0 * res.r * res.r / cg.fresh_colors;
    }
    return cg;
}

std::string to_string(CompletionStage stage) {
    switch (stage) {
        case CompletionStage::none: return "none";
        case CompletionStage::gamma2: return "gamma2";
        case CompletionStage::gamma2_retry: return "gamma2-retry";
        case CompletionStage::gamma_le2: return "gamma-le2";
        case CompletionStage::gamma1: return "gamma1";
    }
    return "unknown";
}

namespace {

struct Completion {
    HamGraph graph;
    std::vector<int> vertex;  // H vertex -> instance vertex
};

Completion completion_graph(const CompletionGraph& cg, const std::vector<int>& edge_subset, int q, int n) {
    Completion out;
    std::vector<int> index(static_cast<std::size_t>(n), -1);
    auto add = [&](int v) {
        index[v] = static_cast<int>(out.vertex.size());
        out.vertex.push_back(v);
    };
    for (int y : cg.Y) add(y);
    for (const auto& p : cg.paths) {
        add(p[0]);
        add(p[1]);
    }
    for (int v : cg.isolated) add(v);

    auto& g = out.graph;
    g.nv = static_cast<int>(out.vertex.size());
    g.start = 0;
    g.colors = q;
    g.partner.assign(static_cast<std::size_t>(g.nv), -1);
    g.adj.assign(static_cast<std::size_t>(g.nv), {});
    for (const auto& p : cg.paths) {
        g.partner[index[p[0]]] = index[p[1]];
        g.partner[index[p[1]]] = index[p[0]];
    }
    for (int idx : edge_subset) {
        const auto& e = cg.edges[idx];
        g.add_edge(index[e.y], index[e.x], e.color, e.cost);
    }
    return out;
}

// Every vertex needs enough colored edges for its two cycle slots.
bool degree_feasible(const HamGraph& g) {
    for (int v = 0; v < g.nv; ++v) {
        const int need = g.partner[v] >= 0 ? 1 : 2;
        if (static_cast<int>(g.adj[v].size()) < need) return false;
    }
    return true;
}

std::vector<int> stitch(const Completion& c, const std::vector<int>& cycle, const PathSystem& ps) {
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(ps.n));
    for (std::size_t k = 0; k < cycle.size(); ++k) {
        const int h = cycle[k];
        const int mate = c.graph.partner[h];
        if (mate >= 0 && k + 1 < cycle.size() && cycle[k + 1] == mate) {
            const auto seg = path_vertices(ps, c.vertex[h]);
            order.insert(order.end(), seg.begin(), seg.end());
            ++k;
        } else {
            order.push_back(c.vertex[h]);
        }
    }
    return order;
}

double cycle_color_cost(const HamGraph& g, const std::vector<int>& cycle) {
    double total = 0.0;
    for (std::size_t k = 0; k < cycle.size(); ++k) {
        const int u = cycle[k], v = cycle[(k + 1) % cycle.size()];
        if (g.partner[u] == v) continue;
        for (const auto& a : g.adj[u])
            if (a.to == v) {
                total += a.cost;
                break;
            }
    }
    return total;
}

std::vector<std::vector<int>> nearest_lists(const Instance& inst, int k) {
    const int n = inst.n();
    k = std::min(k, n - 1);
    std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
    std::vector<std::pair<double, int>> row;
    for (int v = 0; v < n; ++v) {
        row.clear();
        for (int w = 0; w < n; ++w)
            if (w != v) row.push_back({inst.cost(v, w), w});
        std::partial_sort(row.begin(), row.begin() + k, row.end());
        for (int t = 0; t < k; ++t) out[v].push_back(row[t].second);
    }
    return out;
}

}  // namespace

std::size_t rainbow_two_opt(const Instance& inst, const Coloring& coloring, std::vector<int>& order,
                            const TwoOptOptions& opts) {
    const int n = static_cast<int>(order.size());
    if (n < 5) return 0;
    const auto nbrs = nearest_lists(inst, opts.neighbors);
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    std::vector<int> count(static_cast<std::size_t>(coloring.q), 0);
    for (int i = 0; i < n; ++i) ++count[coloring.color(order[i], order[(i + 1) % n])];

    const std::size_t max_moves = opts.max_moves ? opts.max_moves : static_cast<std::size_t>(50) * n;
    std::size_t moves = 0;
    bool improved = true;
    while (improved && moves < max_moves) {
        improved = false;
        for (int i = 0; i < n && moves < max_moves; ++i) {
            const int a = order[i], b = order[(i + 1) % n];
            const double dab = inst.cost(a, b);
            for (int c : nbrs[a]) {
                const double dac = inst.cost(a, c);
                if (dac >= dab) break;
                const int j = pos[c];
                const int d = order[(j + 1) % n];
                if (c == b || d == a) continue;
                const double delta = dac + inst.cost(b, d) - dab - inst.cost(c, d);
                if (delta >= -1e-12 * dab) continue;
                const int ca = coloring.color(a, c), cb = coloring.color(b, d);
                const int r1 = coloring.color(a, b), r2 = coloring.color(c, d);
                if (ca == cb) continue;
                auto free_after = [&](int x) { return count[x] - (x == r1) - (x == r2) == 0; };
                if (!free_after(ca) || !free_after(cb)) continue;
                const int lo = std::min(i, j) + 1, hi = std::max(i, j);
                std::reverse(order.begin() + lo, order.begin() + hi + 1);
                for (int t = lo; t <= hi; ++t) pos[order[t]] = t;
                --count[r1];
                --count[r2];
                ++count[ca];
                ++count[cb];
                ++moves;
                improved = true;
                break;
            }
        }
    }
    return moves;
}

TourResult rainbow_tour(const Instance& inst, const Coloring& coloring, const TourOptions& opts,
                        const SeedSpec& seed) {
    const int n = inst.n();
    check_coloring(coloring, n);
    if (coloring.q < palette_size(n, opts.eps))
        throw std::invalid_argument("palette too small: need q >= ceil((1 + eps) n)");

    TourResult out;
    auto& d = out.diag;
    double C = opts.C;
    Reserve res = select_reserve(n, C);
    PathSystem ps;
    while (true) {
        const int k0 = static_cast<int>(res.rest.size()) - res.r;
        ps = greedy_paths(inst, coloring, res, k0, C, opts.check_invariants);
        d.r = res.r;
        d.k0 = k0;
        d.C_used = C;
        if (!ps.stalled) break;
        if (d.stall_retries >= opts.stall_retries) {
            out.failure = "GreedyStalled";
            return out;
        }
        ++d.stall_retries;
        C *= 1.5;
        try {
            res = select_reserve(n, C);
        } catch (const std::invalid_argument&) {
            out.failure = "GreedyStalled";
            return out;
        }
    }
    d.greedy_cost = ps.cost;
    d.skipped_cycle = ps.skipped_cycle;
    d.skipped_degree = ps.skipped_degree;
    d.skipped_color = ps.skipped_color;
    d.lambda_exceed_fraction = d.k0 > 0 ? static_cast<double>(ps.lambda_exceed) / d.k0 : 0.0;

    const auto cg = build_completion(inst, coloring, res, ps);
    d.gamma1 = cg.gamma1.size();
    d.gamma2 = cg.gamma2.size();
    d.mean_fresh_usage = cg.mean_fresh_usage;

    HamSearchOptions hopts;
    hopts.restarts = opts.restarts;
    hopts.steps_per_restart = static_cast<std::int64_t>(opts.steps_per_vertex) * n;
    const std::uint64_t tb = seed.stream_seed("tiebreak");

    struct Stage {
        CompletionStage stage;
        const std::vector<int>* edges;
        bool distinct;
        std::uint64_t salt;
    };
    const Stage stages[] = {
        {CompletionStage::gamma2, &cg.gamma2, false, 1},
        {CompletionStage::gamma2_retry, &cg.gamma2, false, 2},
        {CompletionStage::gamma_le2, &cg.gamma_le2, false, 3},
        {CompletionStage::gamma1, &cg.gamma1, true, 4},
    };
    bool first = true;
    for (const auto& st : stages) {
        if (!first) ++d.retries;
        first = false;
        const auto comp = completion_graph(cg, *st.edges, coloring.q, n);
        if (!degree_feasible(comp.graph)) continue;
        hopts.distinct_colors = st.distinct;
        hopts.exhaustive_max_vertices = res.r <= 10 ? comp.graph.nv : 0;
        auto cycle = find_hamilton_cycle(comp.graph, hopts, SeedSpec{mix_seed(tb, st.salt)});
        if (!cycle) continue;
        if (!is_hamilton_cycle(comp.graph, *cycle, true))
            throw std::logic_error("completion search returned an invalid cycle");
        d.stage = st.stage;
        d.completion_cost = cycle_color_cost(comp.graph, *cycle);
        out.tour.order = stitch(comp, *cycle, ps);
        break;
    }
    if (d.stage == CompletionStage::none) {
        out.failure = "CompletionFailed";
        return out;
    }

    const double before = tour_cost(inst, out.tour.order);
    if (opts.polish) d.polish_moves = rainbow_two_opt(inst, coloring, out.tour.order, opts.two_opt);
    out.tour.total_cost = tour_cost(inst, out.tour.order);
    d.polish_gain = before - out.tour.total_cost;
    if (!is_rainbow_tour(n, out.tour.order, coloring))
        throw std::logic_error("stitched tour is not a rainbow Hamilton cycle");
    out.success = true;
    return out;
}

}  // namespace rainbow
