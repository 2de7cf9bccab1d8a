#include "rainbow/matching.hpp"

#include <limits>
#include <queue>

namespace rainbow {

BipartiteMatching hopcroft_karp(int left, int right, const std::vector<std::vector<int>>& adj) {
    constexpr int inf = std::numeric_limits<int>::max();
    BipartiteMatching m;
    m.match_left.assign(static_cast<std::size_t>(left), -1);
    m.match_right.assign(static_cast<std::size_t>(right), -1);
    std::vector<int> layer(static_cast<std::size_t>(left));
    std::vector<std::size_t> it(static_cast<std::size_t>(left));

    auto bfs = [&] {
        std::queue<int> q;
        bool found = false;
        for (int l = 0; l < left; ++l) {
            if (m.match_left[l] < 0) {
                layer[l] = 0;
                q.push(l);
            } else {
                layer[l] = inf;
            }
        }
        while (!q.empty()) {
            const int l = q.front();
            q.pop();
            for (int r : adj[l]) {
                const int l2 = m.match_right[r];
                if (l2 < 0)
                    found = true;
                else if (layer[l2] == inf) {
                    layer[l2] = layer[l] + 1;
                    q.push(l2);
                }
            }
        }
        return found;
    };

    // Iterative DFS along the layered graph.
    std::vector<int> stack;
    auto dfs = [&](int root) {
        stack.assign(1, root);
        while (!stack.empty()) {
            const int l = stack.back();
            bool advanced = false;
            while (it[l] < adj[l].size()) {
                const int r = adj[l][it[l]];
                const int l2 = m.match_right[r];
                if (l2 < 0) {
                    // Augment along the stack.
                    int right_vertex = r;
                    for (auto s = stack.size(); s-- > 0;) {
                        const int ls = stack[s];
                        const int prev = m.match_left[ls];
                        m.match_left[ls] = right_vertex;
                        m.match_right[right_vertex] = ls;
                        right_vertex = prev;
                    }
                    return true;
                }
                if (layer[l2] == layer[l] + 1) {
                    stack.push_back(l2);
                    advanced = true;
                    break;
                }
                ++it[l];
            }
            if (!advanced) {
                layer[l] = inf;
                stack.pop_back();
                if (!stack.empty()) ++it[stack.back()];
            }
        }
        return false;
    };

    while (bfs()) {
        std::fill(it.begin(), it.end(), 0);
        for (int l = 0; l < left; ++l)
            if (m.match_left[l] < 0 && dfs(l)) ++m.size;
    }
    return m;
}

}  // namespace rainbow
