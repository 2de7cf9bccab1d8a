#include <set>
#include <sstream>
#include <tuple>

#include "doctest.h"
#include "rainbow/harness.hpp"

using namespace rainbow;

namespace {

ExperimentConfig small(const std::string& kind, std::vector<int> grid, int seeds = 3) {
    ExperimentConfig c;
    c.kind = kind;
    c.n_grid = std::move(grid);
    c.seeds = seeds;
    c.master_seed = 12345;
    return c;
}

std::vector<ExperimentConfig> every_kind() {
    return {small("mst-gap", {20, 40}),         small("tsp-gap", {60, 120}),
            small("repeat", {100, 1000}),       small("copies", {200, 400}),
            small("mst-uniform", {30, 60}),     small("rainbow-uniform", {20, 40}),
            small("tree-construct", {100, 200}), small("tour", {100, 200})};
}

}  // namespace

TEST_CASE("empty grid writes only the header") {
    const auto csv = to_csv(run_experiment(small("mst-gap", {})));
    CHECK(csv.rfind("kind,n,q,seed,solver,success,cost,wall_ms,extra_json\n", 0) == 0);
    std::istringstream in(csv);
    CHECK(read_csv(in).empty());
}

TEST_CASE("outputs are byte-identical across runs, runners and thread counts") {
    for (auto c : every_kind()) {
        CAPTURE(c.kind);
        c.threads = 1;
        const auto one = to_csv(run_experiment(c));
        c.threads = 3;
        const auto three = to_csv(run_experiment(c));
        const auto serial = to_csv(run_experiment_serial(c));
        const auto again = to_csv(run_experiment(c));
        CHECK(one == three);
        CHECK(one == serial);
        CHECK(one == again);
    }
}

TEST_CASE("rows are sorted, echo parameters and rerun exactly") {
    for (const auto& c : every_kind()) {
        CAPTURE(c.kind);
        const auto res = run_experiment(c);
        REQUIRE_FALSE(res.rows.empty());
        for (std::size_t i = 1; i < res.rows.size(); ++i) {
            const auto& a = res.rows[i - 1];
            const auto& b = res.rows[i];
            CHECK(std::tie(a.n, a.seed, a.solver) < std::tie(b.n, b.seed, b.solver));
        }
        for (const auto& row : res.rows) {
            CHECK(row.wall_ms == 0.0);
            CHECK(row.extra_json.find("\"master_seed\":12345") != std::string::npos);
            const auto back = config_from_record(row);
            CHECK(back.kind == c.kind);
            CHECK(back.master_seed == c.master_seed);
            const auto redo = rerun_row(row);
            CHECK(redo.success == row.success);
            CHECK(format_double(redo.cost) == format_double(row.cost));
            CHECK(redo.extra_json == row.extra_json);
        }
        CHECK(res.summary.size() == c.n_grid.size());
    }
}

TEST_CASE("CSV round trip") {
    const auto res = run_experiment(small("tree-construct", {50, 80}));
    std::istringstream in(to_csv(res));
    const auto rows = read_csv(in);
    REQUIRE(rows.size() == res.rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].kind == res.rows[i].kind);
        CHECK(rows[i].n == res.rows[i].n);
        CHECK(rows[i].q == res.rows[i].q);
        CHECK(rows[i].seed == res.rows[i].seed);
        CHECK(rows[i].solver == res.rows[i].solver);
        CHECK(rows[i].success == res.rows[i].success);
        CHECK(rows[i].cost == res.rows[i].cost);
        CHECK(rows[i].extra_json == res.rows[i].extra_json);
    }
    std::istringstream bad("kind,n,q,seed,solver,success,cost,wall_ms,extra_json\nmst-gap,1,2\n");
    CHECK_THROWS_AS(read_csv(bad), ConfigError);
}

TEST_CASE("configuration errors") {
    CHECK_THROWS_AS(validate(small("nope", {10})), ConfigError);
    auto c = small("mst-gap", {10});
    c.q_rule = "n^2";
    CHECK_THROWS_AS(validate(c), ConfigError);
    c.q_rule = "none";
    CHECK_THROWS_AS(validate(c), ConfigError);
    CHECK_THROWS_AS(validate(small("mst-gap", {1})), ConfigError);
    CHECK_THROWS_AS(validate(small("tour", {4})), ConfigError);
    auto d = small("tree-construct", {10});
    d.K = 0;
    CHECK_THROWS_AS(validate(d), ConfigError);
    auto e = small("copies", {10});
    e.copy_eps = 0.6;
    CHECK_THROWS_AS(validate(e), ConfigError);
    CHECK_THROWS_AS(run_experiment(small("nope", {10})), ConfigError);
    CHECK_NOTHROW(validate(small("repeat", {1})));
}

TEST_CASE("q rules and seeds") {
    auto c = small("tour", {100});
    CHECK(resolve_q(c, 100) == 120);
    c.q_rule = "n^3";
    CHECK(resolve_q(c, 10) == 1000);
    CHECK(default_q_rule("mst-gap") == "n-1");
    CHECK(default_q_rule("tsp-gap") == "eps");
    CHECK(default_q_rule("copies") == "none");
    std::set<std::uint64_t> seeds;
    for (int n : {10, 20})
        for (int i = 0; i < 100; ++i) seeds.insert(cell_seed(1, n, i));
    CHECK(seeds.size() == 200);
    CHECK(effective_threads(2) >= 1);
}

TEST_CASE("failures are rows, not exceptions") {
    // n = 5 passes validation but the reserve does not fit: the cell fails.
    const auto res = run_experiment(small("tour", {5}, 2));
    for (const auto& row : res.rows) CHECK_FALSE(row.success);
    CHECK(res.summary.at(0).successes == 0);
}
