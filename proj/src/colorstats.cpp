#include "rainbow/colorstats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rainbow/baselines.hpp"
#include "rainbow/harness.hpp"
#include "rainbow/rainbow_exact.hpp"

namespace rainbow {

double expected_repeat_count(std::uint64_t alpha, std::uint64_t beta) {
    if (beta == 0) throw std::invalid_argument("expected_repeat_count: beta must be at least 1");
    if (alpha < 2) return 0.0;
    if (beta == 1) return 1.0;
    const double a = static_cast<double>(alpha), b = static_cast<double>(beta);
    const double l = std::log1p(-1.0 / b);
    // (1-1/b)^a + (a/b)(1-1/b)^(a-1) = (1-1/b)^(a-1) * (1 - 1/b + a/b)
    const double none_or_once = std::exp((a - 1.0) * l) * (1.0 + (a - 1.0) / b);
    return b * (1.0 - none_or_once);
}

RepeatCountReport empirical_repeat_count(std::uint64_t alpha, std::uint64_t beta, const SeedSpec& seed) {
    if (beta == 0) throw std::invalid_argument("empirical_repeat_count: beta must be at least 1");
    RepeatCountReport rep;
    rep.alpha = alpha;
    rep.beta = beta;
    rep.expected = expected_repeat_count(alpha, beta);
    std::vector<std::uint32_t> hits(beta, 0);
    Engine g = seed.stream("colors");
    for (std::uint64_t i = 0; i < alpha; ++i) {
        auto& h = hits[uniform_below(g, beta)];
        if (++h == 2) ++rep.empirical;
    }
    rep.fraction = static_cast<double>(rep.empirical) / static_cast<double>(beta);
    return rep;
}

CopySet find_pair_copies(std::span<const Point> points, double eps, double D) {
    if (!(eps > 0.0 && eps < 0.5 && D > 0.5)) throw std::invalid_argument("find_pair_copies needs 0 < eps < 1/2 < D");
    CopySet set;
    set.eps = eps;
    set.D = D;
    const int n = static_cast<int>(points.size());
    if (n < 2) return set;

    // Grid of cell side R covers both the isolation radius and the pair window.
    const double R = std::max(D, 1.0 + 2.0 * eps);
    double maxc = 0.0;
    for (const auto& p : points) maxc = std::max({maxc, p.x, p.y});
    const int side = std::max(1, static_cast<int>(std::floor(maxc / R)) + 1);
    auto cell_of = [&](double c) { return std::min(side - 1, static_cast<int>(c / R)); };
    std::vector<std::vector<int>> grid(static_cast<std::size_t>(side) * side);
    for (int v = 0; v < n; ++v) grid[cell_of(points[v].x) * side + cell_of(points[v].y)].push_back(v);

    auto dist = [&](int a, int b) { return std::hypot(points[a].x - points[b].x, points[a].y - points[b].y); };
    auto in_window = [&](double len) { return len > 1.0 - 2.0 * eps && len < 1.0 + 2.0 * eps; };
    // Points within R of v, split into those within D and those in the window.
    auto scan = [&](int v, std::vector<int>& near, std::vector<int>& window) {
        near.clear();
        window.clear();
        const int cx = cell_of(points[v].x), cy = cell_of(points[v].y);
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy) {
                const int x = cx + dx, y = cy + dy;
                if (x < 0 || y < 0 || x >= side || y >= side) continue;
                for (int w : grid[x * side + y]) {
                    if (w == v) continue;
                    const double d = dist(v, w);
                    if (d <= D) near.push_back(w);
                    if (in_window(d)) window.push_back(w);
                }
            }
    };

    // {u, v} is a copy when nothing but v lies within D of u and vice versa.
    // When D is below the pair window a vertex can qualify twice; copies are
    // kept disjoint by taking pairs greedily in (u, v) order.
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::vector<int> near_u, win_u, near_v, win_v;
    for (int u = 0; u < n; ++u) {
        if (used[u]) continue;
        scan(u, near_u, win_u);
        if (near_u.size() > 1) continue;
        std::sort(win_u.begin(), win_u.end());
        for (int v : win_u) {
            if (v < u || used[v]) continue;  // found from the smaller index
            if (!near_u.empty() && near_u[0] != v) continue;
            scan(v, near_v, win_v);
            if (near_v.size() > 1 || (near_v.size() == 1 && near_v[0] != u)) continue;
            set.copies.push_back({u, v});
            used[u] = used[v] = 1;
            break;
        }
    }
    return set;
}

CopySet find_pair_copies(const Instance& inst, double eps, double D) {
    if (!inst.is_euclidean()) throw std::invalid_argument("find_pair_copies needs a Euclidean instance");
    const double f = std::sqrt(static_cast<double>(inst.n())) / inst.scale();
    std::vector<Point> scaled(inst.points().begin(), inst.points().end());
    for (auto& p : scaled) p = {p.x * f, p.y * f};
    return find_pair_copies(scaled, eps, D);
}

bool verify_pair_copies(std::span<const Point> points, const CopySet& set) {
    std::vector<char> used(points.size(), 0);
    for (const auto& c : set.copies) {
        if (used[c.u] || used[c.v] || c.u == c.v) return false;
        used[c.u] = used[c.v] = 1;
        const double len = std::hypot(points[c.u].x - points[c.v].x, points[c.u].y - points[c.v].y);
        if (!(len > 1.0 - 2.0 * set.eps && len < 1.0 + 2.0 * set.eps)) return false;
        for (std::size_t w = 0; w < points.size(); ++w) {
            if (static_cast<int>(w) == c.u || static_cast<int>(w) == c.v) continue;
            for (int t : {c.u, c.v})
                if (std::hypot(points[w].x - points[t].x, points[w].y - points[t].y) <= set.D) return false;
        }
    }
    return true;
}

MstGapSample mst_gap_sample(const Instance& inst, const Coloring& coloring) {
    MstGapSample s;
    s.zstar = kruskal_mst(inst).total_cost;
    const auto r = min_rainbow_spanning_tree(inst, coloring);
    s.feasible = r.feasible;
    if (r.feasible) s.z = r.tree.total_cost;
    return s;
}

TspGapSample tsp_gap_sample(const Instance& inst, const Coloring& coloring, const TourOptions& opts,
                            const SeedSpec& seed) {
    TspGapSample s;
    s.zstar = tsp_heuristic(inst, opts.two_opt).total_cost;
    const auto t = rainbow_tour(inst, coloring, opts, seed);
    s.success = t.success;
    s.diag = t.diag;
    if (t.success) s.z = t.tour.total_cost;
    return s;
}

GapReport make_gap_report(const std::map<int, std::vector<double>>& gaps, const std::map<int, int>& excluded) {
    GapReport rep;
    std::vector<double> ns, means, sems;
    for (const auto& [n, xs] : gaps) {
        const auto st = mean_stats(xs);
        rep.ns.push_back(n);
        rep.mean.push_back(st.mean);
        rep.sem.push_back(st.sem);
        rep.count.push_back(st.count);
        const auto it = excluded.find(n);
        rep.excluded.push_back(it == excluded.end() ? 0 : it->second);
        for (double g : xs)
            if (g < 0.0) rep.all_nonnegative = false;
        ns.push_back(n);
        means.push_back(st.mean);
        sems.push_back(st.sem);
    }
    rep.fit = fit_scaling(ns, means, sems);
    return rep;
}

namespace {

GapReport gap_report_from(const ExperimentResult& res) {
    std::map<int, std::vector<double>> gaps;
    std::map<int, int> excluded;
    for (int n : res.config.n_grid) gaps[n];
    for (const auto& s : res.summary) excluded[s.n] = s.cells - s.successes;
    // Gap per cell is stored on the rainbow row.
    const std::string rainbow = res.config.kind == "mst-gap" ? "rainbow-exact" : "rainbow-tour";
    const std::string other = res.config.kind == "mst-gap" ? "kruskal" : "tsp-heuristic";
    std::map<std::pair<int, std::uint64_t>, std::pair<const RunRecord*, const RunRecord*>> cells;
    for (const auto& r : res.rows) {
        auto& c = cells[{r.n, r.seed}];
        if (r.solver == rainbow) c.first = &r;
        if (r.solver == other) c.second = &r;
    }
    for (const auto& [key, c] : cells)
        if (c.first && c.second && c.first->success && c.second->success)
            gaps[key.first].push_back(c.first->cost - c.second->cost);
    return make_gap_report(gaps, excluded);
}

}  // namespace

GapReport mst_gap_experiment(const std::vector<int>& ns, int seeds, std::uint64_t master, int threads) {
    ExperimentConfig cfg;
    cfg.kind = "mst-gap";
    cfg.n_grid = ns;
    cfg.seeds = seeds;
    cfg.master_seed = master;
    cfg.threads = threads;
    return gap_report_from(run_experiment(cfg));
}

GapReport tsp_gap_experiment(const std::vector<int>& ns, int seeds, std::uint64_t master, const TourOptions& opts,
                             int threads) {
    ExperimentConfig cfg;
    cfg.kind = "tsp-gap";
    cfg.n_grid = ns;
    cfg.seeds = seeds;
    cfg.master_seed = master;
    cfg.threads = threads;
    cfg.eps = opts.eps;
    cfg.C = opts.C;
    cfg.budget = opts.restarts;
    cfg.steps_per_vertex = opts.steps_per_vertex;
    cfg.polish = opts.polish;
    return gap_report_from(run_experiment(cfg));
}

}  // namespace rainbow
