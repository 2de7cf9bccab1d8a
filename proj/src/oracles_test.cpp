#include <cmath>
#include <set>

#include "doctest.h"
#include "rainbow/oracles.hpp"
#include "rainbow/structures.hpp"

using namespace rainbow;

TEST_CASE("Pruefer enumeration yields every labeled tree once") {
    for (int n = 2; n <= 7; ++n) {
        std::set<std::vector<std::pair<int, int>>> seen;
        long count = 0;
        oracle::for_each_labeled_tree(n, [&](const std::vector<std::pair<int, int>>& edges, const std::vector<int>& deg) {
            ++count;
            std::vector<EdgeId> ids;
            for (auto [i, j] : edges) ids.push_back(edge_id(i, j));
            CHECK(is_spanning_tree(n, ids));
            int total = 0;
            for (int d : deg) total += d;
            CHECK(total == 2 * (n - 1));
            auto sorted = edges;
            std::sort(sorted.begin(), sorted.end());
            seen.insert(sorted);
        });
        CHECK(count == std::lround(std::pow(n, n - 2)));
        CHECK(seen.size() == static_cast<std::size_t>(count));
    }
}

TEST_CASE("hand-checked tiny answers") {
    // Path 0-1-2-3 on a line: cheap edges are the unit steps.
    const auto line = Instance::euclidean({{0, 0}, {1, 0}, {2, 0}, {3, 0}}, 3.0);
    const auto mst = oracle::brute_mst(line);
    CHECK(mst.cost == doctest::Approx(3.0));
    CHECK(oracle::brute_tsp(line).cost == doctest::Approx(6.0));

    // Only edges (0,1), (1,2), (2,3) share color 0: a rainbow tree may use one.
    Coloring col{6, {0, 1, 0, 2, 3, 0}};
    REQUIRE(col.colors[edge_id(0, 1)] == 0);
    REQUIRE(col.colors[edge_id(1, 2)] == 0);
    REQUIRE(col.colors[edge_id(2, 3)] == 0);
    const auto rb = oracle::brute_rainbow_mst(line, col);
    REQUIRE(rb.feasible);
    CHECK(rb.cost == doctest::Approx(1.0 + 2.0 + 2.0));
    CHECK(is_rainbow_spanning_tree(4, rb.edges, col));

    const auto pm = oracle::brute_perfect_matching(line);
    CHECK(pm.cost == doctest::Approx(2.0));
    const auto rpm = oracle::brute_rainbow_perfect_matching(line, col);
    REQUIRE(rpm.feasible);
    CHECK(rpm.cost == doctest::Approx(2.0 + 2.0));  // {0,2}+{1,3}, colors 1 and 3

    Coloring mono{1, std::vector<std::uint32_t>(6, 0)};
    CHECK_FALSE(oracle::brute_rainbow_mst(line, mono).feasible);
    CHECK_FALSE(oracle::brute_rainbow_tsp(line, mono).feasible);
    CHECK_FALSE(oracle::brute_rainbow_degree_bounded_mst(line, col, 1).feasible);
    const auto deg2 = oracle::brute_rainbow_degree_bounded_mst(line, col, 2);
    REQUIRE(deg2.feasible);
    CHECK(deg2.cost >= rb.cost);
}

TEST_CASE("rainbow answers dominate unconstrained ones") {
    for (int s = 0; s < 60; ++s) {
        const SeedSpec seed{static_cast<std::uint64_t>(s)};
        const int n = 4 + 2 * (s % 3);
        const auto inst = gen_euclidean(n, 1.0, seed);
        const auto col = color_edges(inst.edges(), n + s % 4, seed);
        const auto t = oracle::brute_rainbow_mst(inst, col);
        if (t.feasible) CHECK(t.cost >= oracle::brute_mst(inst).cost - 1e-12);
        const auto c = oracle::brute_rainbow_tsp(inst, col);
        if (c.feasible) {
            CHECK(is_rainbow_tour(n, c.order, col));
            CHECK(c.cost >= oracle::brute_tsp(inst).cost - 1e-12);
            CHECK(c.cost == doctest::Approx(tour_cost(inst, c.order)));
        }
        const auto m = oracle::brute_rainbow_perfect_matching(inst, col);
        if (m.feasible) CHECK(m.cost >= oracle::brute_perfect_matching(inst).cost - 1e-12);
    }
}
