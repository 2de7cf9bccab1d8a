#include "rainbow/hamilton_search.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace rainbow {

void HamGraph::add_edge(int u, int v, int color, double cost) {
    adj[u].push_back({v, color, cost});
    adj[v].push_back({u, color, cost});
}

namespace {

const HamArc* find_arc(const HamGraph& g, int u, int v) {
    for (const auto& a : g.adj[u])
        if (a.to == v) return &a;
    return nullptr;
}

bool forced(const HamGraph& g, int u, int v) { return g.partner[u] == v; }

class PosaSearch {
public:
    PosaSearch(const HamGraph& g, bool distinct) : g_(g), distinct_(distinct) {}

    std::optional<std::vector<int>> run(Engine& rng, std::int64_t budget, std::int64_t& steps) {
        reset();
        std::vector<const HamArc*> outside, inside;
        while (steps < budget) {
            ++steps;
            const int end = path_.back();
            const int mate = g_.partner[end];
            if (mate >= 0 && pos_[mate] < 0) {
                push(mate);
                continue;
            }
            const int size = static_cast<int>(path_.size());
            if (size == g_.nv) {
                const HamArc* close = find_arc(g_, end, g_.start);
                if (close && color_free(close->color)) return path_;
            }
            outside.clear();
            inside.clear();
            for (const auto& a : g_.adj[end]) {
                const int p = pos_[a.to];
                if (p < 0) {
                    if (color_free(a.color)) outside.push_back(&a);
                } else if (p <= size - 3 && !forced(g_, path_[p], path_[p + 1])) {
                    const int removed = colored_edge(path_[p], path_[p + 1])->color;
                    if (color_free(a.color) || a.color == removed) inside.push_back(&a);
                }
            }
            if (!outside.empty()) {
                const HamArc* pick;
                if (rng() & 1) {
                    pick = *std::min_element(outside.begin(), outside.end(),
                                             [](const HamArc* x, const HamArc* y) { return x->cost < y->cost; });
                } else {
                    pick = outside[uniform_below(rng, outside.size())];
                }
                count_color(pick->color, +1);
                push(pick->to);
            } else if (!inside.empty()) {
                rotate(*inside[uniform_below(rng, inside.size())]);
            } else {
                return std::nullopt;
            }
        }
        return std::nullopt;
    }

private:
    void reset() {
        path_.assign(1, g_.start);
        pos_.assign(static_cast<std::size_t>(g_.nv), -1);
        pos_[g_.start] = 0;
        if (distinct_) used_.assign(static_cast<std::size_t>(g_.colors), 0);
    }

    void push(int v) {
        pos_[v] = static_cast<int>(path_.size());
        path_.push_back(v);
    }

    bool color_free(int c) const { return !distinct_ || used_[c] == 0; }
    void count_color(int c, int delta) {
        if (distinct_) used_[c] += delta;
    }

    const HamArc* colored_edge(int u, int v) const {
        const HamArc* a = find_arc(g_, u, v);
        if (!a) throw std::logic_error("path edge missing from the completion graph");
        return a;
    }

    // Posa rotation: end -- path[i] added, path[i] -- path[i+1] removed.
    void rotate(const HamArc& arc) {
        const int i = pos_[arc.to];
        count_color(colored_edge(path_[i], path_[i + 1])->color, -1);
        count_color(arc.color, +1);
        std::reverse(path_.begin() + i + 1, path_.end());
        for (std::size_t k = static_cast<std::size_t>(i) + 1; k < path_.size(); ++k)
            pos_[path_[k]] = static_cast<int>(k);
    }

    const HamGraph& g_;
    bool distinct_;
    std::vector<int> path_, pos_, used_;
};

void validate(const HamGraph& g) {
    if (g.nv <= 0 || g.start < 0 || g.start >= g.nv) throw std::invalid_argument("bad completion graph");
    if (g.partner[g.start] >= 0) throw std::invalid_argument("search start must not carry a forced edge");
}

}  // namespace

std::optional<std::vector<int>> exhaustive_hamilton_cycle(const HamGraph& g, bool distinct_colors,
                                                          std::int64_t node_budget) {
    validate(g);
    std::vector<int> path{g.start};
    std::vector<char> in(static_cast<std::size_t>(g.nv), 0);
    std::vector<int> used(distinct_colors ? static_cast<std::size_t>(g.colors) : 0, 0);
    in[g.start] = 1;
    std::int64_t nodes = 0;
    bool out_of_budget = false;

    std::function<bool()> dfs = [&]() -> bool {
        if (++nodes > node_budget) {
            out_of_budget = true;
            return false;
        }
        const int end = path.back();
        if (static_cast<int>(path.size()) == g.nv) {
            const HamArc* close = find_arc(g, end, g.start);
            return close && (!distinct_colors || used[close->color] == 0);
        }
        const int mate = g.partner[end];
        if (mate >= 0 && !in[mate]) {
            in[mate] = 1;
            path.push_back(mate);
            if (dfs()) return true;
            path.pop_back();
            in[mate] = 0;
            return false;
        }
        for (const auto& a : g.adj[end]) {
            if (in[a.to] || (distinct_colors && used[a.color] != 0)) continue;
            in[a.to] = 1;
            path.push_back(a.to);
            if (distinct_colors) ++used[a.color];
            if (dfs()) return true;
            if (distinct_colors) --used[a.color];
            path.pop_back();
            in[a.to] = 0;
            if (out_of_budget) return false;
        }
        return false;
    };
    if (dfs()) return path;
    return std::nullopt;
}

std::optional<std::vector<int>> find_hamilton_cycle(const HamGraph& g, const HamSearchOptions& opts,
                                                    const SeedSpec& seed, HamSearchStats* stats) {
    validate(g);
    HamSearchStats local;
    HamSearchStats& st = stats ? *stats : local;
    st = {};
    if (g.nv == 1) return std::nullopt;

    PosaSearch search(g, opts.distinct_colors);
    for (int k = 0; k < opts.restarts; ++k) {
        st.restarts_used = k + 1;
        Engine rng = seed.child(static_cast<std::uint64_t>(k)).stream("tiebreak");
        std::int64_t steps = 0;
        auto cycle = search.run(rng, opts.steps_per_restart, steps);
        st.steps += steps;
        if (cycle) return cycle;
    }
    if (g.nv <= opts.exhaustive_max_vertices) {
        st.exhaustive = true;
        return exhaustive_hamilton_cycle(g, opts.distinct_colors, opts.exhaustive_node_budget);
    }
    return std::nullopt;
}

bool is_hamilton_cycle(const HamGraph& g, const std::vector<int>& cycle, bool distinct_colors) {
    if (static_cast<int>(cycle.size()) != g.nv || g.nv < 3) return false;
    std::vector<char> seen(static_cast<std::size_t>(g.nv), 0);
    for (int v : cycle) {
        if (v < 0 || v >= g.nv || seen[v]) return false;
        seen[v] = 1;
    }
    std::vector<int> used(static_cast<std::size_t>(g.colors), 0);
    int forced_used = 0;
    for (std::size_t k = 0; k < cycle.size(); ++k) {
        const int u = cycle[k], v = cycle[(k + 1) % cycle.size()];
        if (forced(g, u, v)) {
            ++forced_used;
            continue;
        }
        const HamArc* a = find_arc(g, u, v);
        if (!a) return false;
        if (distinct_colors && used[a->color]++ > 0) return false;
    }
    int pairs = 0;
    for (int v = 0; v < g.nv; ++v)
        if (g.partner[v] > v) ++pairs;
    return forced_used == pairs;
}

}  // namespace rainbow
