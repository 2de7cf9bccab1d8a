#include <algorithm>
#include <functional>
#include <random>

#include "doctest.h"
#include "rainbow/matching.hpp"

using namespace rainbow;

namespace {

int brute_max_matching(int left, int right, const std::vector<std::vector<int>>& adj) {
    std::vector<bool> used(static_cast<std::size_t>(right), false);
    std::function<int(int)> go = [&](int l) -> int {
        if (l == left) return 0;
        int best = go(l + 1);
        for (int r : adj[static_cast<std::size_t>(l)]) {
            if (used[static_cast<std::size_t>(r)]) continue;
            used[static_cast<std::size_t>(r)] = true;
            best = std::max(best, 1 + go(l + 1));
            used[static_cast<std::size_t>(r)] = false;
        }
        return best;
    };
    return go(0);
}

}  // namespace

TEST_CASE("Hopcroft-Karp is maximum and consistent") {
    std::mt19937_64 g(42);
    for (int t = 0; t < 400; ++t) {
        const int left = 1 + static_cast<int>(g() % 8);
        const int right = 1 + static_cast<int>(g() % 8);
        const double p = 0.1 + 0.1 * static_cast<double>(g() % 7);
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(left));
        for (int l = 0; l < left; ++l)
            for (int r = 0; r < right; ++r)
                if (static_cast<double>(g() % 1000) < 1000 * p) adj[static_cast<std::size_t>(l)].push_back(r);
        const auto m = hopcroft_karp(left, right, adj);
        REQUIRE(m.size == brute_max_matching(left, right, adj));
        int count = 0;
        for (int l = 0; l < left; ++l) {
            const int r = m.match_left[static_cast<std::size_t>(l)];
            if (r < 0) continue;
            ++count;
            CHECK(m.match_right[static_cast<std::size_t>(r)] == l);
            const auto& a = adj[static_cast<std::size_t>(l)];
            CHECK(std::find(a.begin(), a.end(), r) != a.end());
        }
        CHECK(count == m.size);
    }
}

TEST_CASE("preference order is honoured when unconstrained") {
    const auto m = hopcroft_karp(2, 3, {{2, 0}, {1}});
    CHECK(m.size == 2);
    CHECK(m.match_left[0] == 2);
    CHECK(m.match_left[1] == 1);
    CHECK(hopcroft_karp(0, 0, {}).size == 0);
}
