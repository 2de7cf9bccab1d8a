#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "rainbow/kernels.hpp"

using namespace rainbow;

namespace {

bool same(const kernels::UpwardEdge& a, const kernels::UpwardEdge& b) {
    return a.upper == b.upper && a.edge == b.edge && a.length == b.length;
}

}  // namespace

TEST_CASE("upward order sorts by height then index") {
    const std::vector<Point> pts{{0.5, 0.2}, {0.1, 0.9}, {0.7, 0.2}, {0.3, 0.0}};
    CHECK(kernels::upward_order(pts) == std::vector<int>{3, 0, 2, 1});
}

TEST_CASE("K shortest upward edges match a full scan") {
    for (int s = 0; s < 20; ++s) {
        const SeedSpec seed{static_cast<std::uint64_t>(s)};
        const int n = 30 + 10 * s;
        const int K = 1 + s % 7;
        const auto inst = gen_euclidean(n, std::sqrt(double(n)), seed);
        const auto order = kernels::upward_order(inst.points());
        const auto got = kernels::k_shortest_upward_serial(inst.points(), order, K);
        REQUIRE(got.size() == static_cast<std::size_t>(n - 1));
        for (int i = 0; i + 1 < n; ++i) {
            std::vector<std::pair<double, EdgeId>> all;
            for (int j = i + 1; j < n; ++j) {
                const int a = order[static_cast<std::size_t>(i)], b = order[static_cast<std::size_t>(j)];
                all.emplace_back(inst.cost(edge_id(a, b)), edge_id(a, b));
            }
            std::sort(all.begin(), all.end());
            const auto want = std::min<std::size_t>(all.size(), static_cast<std::size_t>(K));
            const auto& row = got[static_cast<std::size_t>(i)];
            REQUIRE(row.size() == want);
            for (std::size_t k = 0; k < want; ++k) {
                CHECK(row[k].edge == all[k].second);
                CHECK(row[k].length == all[k].first);
            }
        }
    }
}

TEST_CASE("serial and OpenMP kernels agree bit for bit") {
    for (int s = 0; s < 5; ++s) {
        const SeedSpec seed{static_cast<std::uint64_t>(90 + s)};
        const int n = 200 + 150 * s;
        const auto inst = gen_euclidean(n, 1.0, seed);
        const auto order = kernels::upward_order(inst.points());
        for (int threads : {1, 2, 3}) {
            const auto a = kernels::k_shortest_upward_serial(inst.points(), order, 20);
            const auto b = kernels::k_shortest_upward_omp(inst.points(), order, 20, threads);
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i) {
                REQUIRE(a[i].size() == b[i].size());
                for (std::size_t k = 0; k < a[i].size(); ++k) CHECK(same(a[i][k], b[i][k]));
            }
            const auto la = kernels::level_edges_serial(inst.points(), order, 1.0, 2.0, 30);
            const auto lb = kernels::level_edges_omp(inst.points(), order, 1.0, 2.0, 30, threads);
            REQUIRE(la.size() == lb.size());
            for (std::size_t i = 0; i < la.size(); ++i) CHECK(same(la[i], lb[i]));
        }
    }
}

TEST_CASE("edge levels follow the quadratic thresholds") {
    const int n = 100;  // sqrt(n) = 10, B = 2: level j starts at j^2 / 5
    CHECK(kernels::edge_level(0.19, n, 2.0, 50) == 0);
    CHECK(kernels::edge_level(0.2, n, 2.0, 50) == 1);
    CHECK(kernels::edge_level(0.79, n, 2.0, 50) == 1);
    CHECK(kernels::edge_level(0.8, n, 2.0, 50) == 2);
    CHECK(kernels::edge_level(1.41, n, 2.0, 50) == 2);
    CHECK(kernels::edge_level(1.8, n, 2.0, 50) == 3);
    CHECK(kernels::edge_level(1.8, n, 2.0, 2) == 0);  // above the last level
}

TEST_CASE("level slots hold the shortest edge of that level") {
    const SeedSpec seed{5};
    const int n = 300;
    const auto inst = gen_euclidean(n, 1.0, seed);
    const auto order = kernels::upward_order(inst.points());
    const int levels = 40;
    const double B = 0.5;
    const auto slots = kernels::level_edges_serial(inst.points(), order, 1.0, B, levels);
    REQUIRE(slots.size() == static_cast<std::size_t>((n - 1) * levels));
    for (int i = 0; i + 1 < n; ++i) {
        std::vector<double> best(static_cast<std::size_t>(levels), INFINITY);
        for (int j = i + 1; j < n; ++j) {
            const double len = inst.cost(edge_id(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]));
            const int lv = kernels::edge_level(len, n, B, levels);
            if (lv > 0) best[static_cast<std::size_t>(lv - 1)] = std::min(best[static_cast<std::size_t>(lv - 1)], len);
        }
        for (int l = 0; l < levels; ++l) {
            const auto& slot = slots[static_cast<std::size_t>(i * levels + l)];
            if (std::isinf(best[static_cast<std::size_t>(l)])) {
                CHECK(slot.upper == -1);
            } else {
                CHECK(slot.length == best[static_cast<std::size_t>(l)]);
                CHECK(kernels::edge_level(slot.length, n, B, levels) == l + 1);
            }
        }
    }
}
