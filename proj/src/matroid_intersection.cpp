#include "rainbow/matroid_intersection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rainbow/union_find.hpp"

namespace rainbow {

void check_common_independent(const GroundSet& ground, const std::vector<int>& chosen) {
    UnionFind uf(ground.n);
    std::vector<char> seen(static_cast<std::size_t>(ground.q), 0);
    for (int x : chosen) {
        if (!uf.unite(ground.u[x], ground.v[x])) throw std::logic_error("matroid intersection: chosen set has a cycle");
        if (seen[ground.color[x]]) throw std::logic_error("matroid intersection: chosen set repeats a color");
        seen[ground.color[x]] = 1;
    }
}

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Rooted spanning forest of the current set, for fundamental-path queries.
struct Forest {
    std::vector<int> comp, parent, parent_elem, depth;

    void build(const GroundSet& g, const std::vector<int>& chosen) {
        const auto n = static_cast<std::size_t>(g.n);
        std::vector<int> deg(n + 1, 0);
        for (int x : chosen) {
            ++deg[g.u[x] + 1];
            ++deg[g.v[x] + 1];
        }
        for (std::size_t i = 0; i < n; ++i) deg[i + 1] += deg[i];
        std::vector<int> adj(static_cast<std::size_t>(deg[n]));
        std::vector<int> fill(deg.begin(), deg.end() - 1);
        for (int x : chosen) {
            adj[fill[g.u[x]]++] = x;
            adj[fill[g.v[x]]++] = x;
        }
        comp.assign(n, -1);
        parent.assign(n, -1);
        parent_elem.assign(n, -1);
        depth.assign(n, 0);
        std::vector<int> stack;
        int c = 0;
        for (int s = 0; s < g.n; ++s) {
            if (comp[s] >= 0) continue;
            comp[s] = c;
            stack.push_back(s);
            while (!stack.empty()) {
                const int a = stack.back();
                stack.pop_back();
                for (int k = deg[a]; k < deg[a + 1]; ++k) {
                    const int x = adj[k];
                    const int b = g.u[x] == a ? g.v[x] : g.u[x];
                    if (comp[b] >= 0) continue;
                    comp[b] = c;
                    parent[b] = a;
                    parent_elem[b] = x;
                    depth[b] = depth[a] + 1;
                    stack.push_back(b);
                }
            }
            ++c;
        }
    }

    template <typename F>
    void for_each_on_path(int a, int b, F&& f) const {
        while (a != b) {
            if (depth[a] < depth[b]) std::swap(a, b);
            f(parent_elem[a]);
            a = parent[a];
        }
    }
};

class ExchangeSearch {
public:
    ExchangeSearch(const GroundSet& g, bool weighted) : g_(g), weighted_(weighted) {
        const std::size_t m = g.size();
        double scale = 1.0;
        for (double c : g.cost) scale = std::max(scale, std::abs(c));
        tol_ = 1e-12 * scale;
        in_set_.assign(m, 0);
        dist_.resize(m + 2);
        hops_.resize(m + 2);
        pred_.resize(m + 2);
        queued_.resize(m + 2);
        owner_.assign(static_cast<std::size_t>(g.q), -1);
    }

    // Returns the augmenting path (ground indices, hubs removed) or empty.
    std::vector<int> shortest_augmenting_path(const std::vector<int>& chosen) {
        const int m = static_cast<int>(g_.size());
        const int hub_graphic = m;  // members -> every graphic-free element
        const int hub_color = m + 1;  // color-free elements -> every member
        forest_.build(g_, chosen);
        std::fill(owner_.begin(), owner_.end(), -1);
        for (int y : chosen) owner_[g_.color[y]] = y;

        // Arcs y -> x whenever y lies on the fundamental path of x.
        graphic_free_.clear();
        arc_from_.clear();
        arc_to_.clear();
        for (int x = 0; x < m; ++x) {
            if (in_set_[x]) continue;
            const int a = g_.u[x], b = g_.v[x];
            if (forest_.comp[a] != forest_.comp[b]) {
                graphic_free_.push_back(x);
                continue;
            }
            forest_.for_each_on_path(a, b, [&](int y) {
                arc_from_.push_back(y);
                arc_to_.push_back(x);
            });
        }
        csr_start_.assign(static_cast<std::size_t>(m) + 1, 0);
        for (int y : arc_from_) ++csr_start_[y + 1];
        for (int i = 0; i < m; ++i) csr_start_[i + 1] += csr_start_[i];
        csr_.resize(arc_to_.size());
        {
            std::vector<int> fill(csr_start_.begin(), csr_start_.end() - 1);
            for (std::size_t k = 0; k < arc_from_.size(); ++k) csr_[fill[arc_from_[k]]++] = arc_to_[k];
        }

        std::fill(dist_.begin(), dist_.end(), inf);
        std::fill(hops_.begin(), hops_.end(), std::numeric_limits<int>::max());
        std::fill(pred_.begin(), pred_.end(), -1);
        std::fill(queued_.begin(), queued_.end(), 0);
        queue_.assign(static_cast<std::size_t>(m) + 3, 0);
        head_ = tail_ = 0;
        std::size_t pops = 0;
        const std::size_t pop_limit = (static_cast<std::size_t>(m) + 2) * (chosen.size() + 4) * 4;
        for (int x : graphic_free_) {
            dist_[x] = len(x);
            hops_[x] = 0;
            push(x);
        }

        while (head_ != tail_) {
            const int a = queue_[head_];
            head_ = (head_ + 1) % queue_.size();
            queued_[a] = 0;
            if (++pops > pop_limit) throw std::logic_error("matroid intersection: shortest-path search did not settle");
            const double d = dist_[a];
            const int h = hops_[a];
            if (a == hub_graphic) {
                for (int x : graphic_free_) relax(a, x, d + len(x), h + 1);
            } else if (a == hub_color) {
                for (int y : chosen) relax(a, y, d + len(y), h + 1);
            } else if (in_set_[a]) {
                for (int k = csr_start_[a]; k < csr_start_[a + 1]; ++k) relax(a, csr_[k], d + len(csr_[k]), h + 1);
                relax(a, hub_graphic, d, h);
            } else {
                const int y = owner_[g_.color[a]];
                if (y >= 0)
                    relax(a, y, d + len(y), h + 1);
                else
                    relax(a, hub_color, d, h);
            }
        }

        int sink = -1;
        for (int x = 0; x < m; ++x) {
            if (in_set_[x] || owner_[g_.color[x]] >= 0 || dist_[x] == inf) continue;
            if (sink < 0 || better(dist_[x], hops_[x], dist_[sink], hops_[sink])) sink = x;
        }
        std::vector<int> path;
        if (sink < 0) return path;
        for (int a = sink; a >= 0; a = pred_[a]) {
            if (a < m) path.push_back(a);
            if (path.size() > 2 * chosen.size() + 2) throw std::logic_error("matroid intersection: predecessor cycle");
        }
        if (path.size() % 2 == 0) throw std::logic_error("matroid intersection: augmenting path has even length");
        return path;
    }

    void toggle(int x) { in_set_[x] ^= 1; }

private:
    double len(int x) const {
        if (!weighted_) return 0.0;
        return in_set_[x] ? -g_.cost[x] : g_.cost[x];
    }

    bool better(double d1, int h1, double d2, int h2) const {
        if (d1 < d2 - tol_) return true;
        return d1 <= d2 + tol_ && h1 < h2;
    }

    void relax(int from, int to, double d, int h) {
        if (dist_[to] != inf && !better(d, h, dist_[to], hops_[to])) return;
        dist_[to] = d;
        hops_[to] = h;
        pred_[to] = from;
        push(to);
    }

    void push(int a) {
        if (queued_[a]) return;
        queued_[a] = 1;
        queue_[tail_] = a;
        tail_ = (tail_ + 1) % queue_.size();
    }

    const GroundSet& g_;
    bool weighted_;
    double tol_ = 0.0;
    Forest forest_;
    std::vector<char> in_set_, queued_;
    std::vector<double> dist_;
    std::vector<int> hops_, pred_, owner_;
    std::vector<int> graphic_free_, arc_from_, arc_to_, csr_start_, csr_;
    std::vector<int> queue_;
    std::size_t head_ = 0, tail_ = 0;
};

}  // namespace

MatroidIntersectionState matroid_intersection(const GroundSet& ground, int target, const IntersectionOptions& opts) {
    for (std::size_t x = 0; x < ground.size(); ++x) {
        if (ground.color[x] < 0 || ground.color[x] >= ground.q)
            throw std::invalid_argument("matroid intersection: color out of range");
        if (ground.u[x] == ground.v[x]) throw std::invalid_argument("matroid intersection: self-loop in ground set");
    }
    MatroidIntersectionState state;
    ExchangeSearch search(ground, opts.weighted);
    std::vector<char> member(ground.size(), 0);
    while (state.rank() < target) {
        const auto path = search.shortest_augmenting_path(state.chosen);
        if (path.empty()) break;
        for (int x : path) {
            search.toggle(x);
            member[x] ^= 1;
        }
        state.chosen.clear();
        for (std::size_t x = 0; x < ground.size(); ++x)
            if (member[x]) state.chosen.push_back(static_cast<int>(x));
        ++state.augmentations;
        if (opts.check_invariants) check_common_independent(ground, state.chosen);
    }
    state.cost = 0.0;
    for (int x : state.chosen) state.cost += ground.cost[x];
    return state;
}

}  // namespace rainbow
