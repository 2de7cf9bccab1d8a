#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rainbow/baselines.hpp"
#include "rainbow/harness.hpp"
#include "rainbow/instance.hpp"
#include "rainbow/oracles.hpp"
#include "rainbow/rainbow_exact.hpp"
#include "rainbow/tour_greedy.hpp"
#include "rainbow/tree_construct.hpp"

namespace {

using nlohmann::json;
using namespace rainbow;

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_failed = 2;

json edges_json(const std::vector<EdgeId>& edges) {
    json out = json::array();
    for (EdgeId e : edges) {
        auto [i, j] = edge_endpoints(e);
        out.push_back({i, j});
    }
    return out;
}

void write_diag(const std::string& path, const json& diag) {
    if (path.empty()) return;
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write " + path);
    f << diag.dump(2) << '\n';
}

std::vector<int> parse_grid(const std::vector<std::string>& items) {
    std::vector<int> ns;
    for (const auto& item : items) {
        std::stringstream ss(item);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            try {
                std::size_t used = 0;
                const int n = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                ns.push_back(n);
            } catch (const std::logic_error&) {
                throw ConfigError("bad n-grid entry '" + tok + "'");
            }
        }
    }
    return ns;
}

InstanceFile load_input(const std::string& path) {
    if (!std::ifstream(path)) throw ConfigError("cannot read " + path);
    return load_instance(path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rainbow-opt: rainbow spanning trees and tours on randomly colored graphs"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a colored instance file");
    std::string gen_kind = "euclid", gen_out;
    int gen_n = 0, gen_q = -1;
    std::uint64_t gen_seed = 1;
    double gen_scale = 1.0;
    gen->add_option("--kind", gen_kind, "euclid or uniform")->check(CLI::IsMember({"euclid", "uniform"}));
    gen->add_option("--n", gen_n, "vertices")->required();
    gen->add_option("--q", gen_q, "palette size (default n-1)");
    gen->add_option("--seed", gen_seed, "master seed");
    gen->add_option("--scale", gen_scale, "side of the square (euclid)");
    gen->add_option("--out", gen_out, "output file (default stdout)");

    // constants
    auto* constants = app.add_subcommand("constants", "zeta(3) and the Wastlund constant");
    std::size_t intervals = WastlundOptions{}.intervals;
    constants->add_option("--intervals", intervals, "Simpson panels");

    std::string input;
    auto* mst = app.add_subcommand("mst", "minimum spanning tree (Kruskal)");
    mst->add_option("--input", input)->required();

    auto* rmst = app.add_subcommand("rainbow-mst", "exact minimum rainbow spanning tree");
    bool with_oracle = false;
    rmst->add_option("--input", input)->required();
    rmst->add_flag("--oracle", with_oracle, "cross-check against exhaustive search (n <= 8)");

    auto* tree = app.add_subcommand("tree-construct", "points-by-colors matching construction");
    TreeConstructOptions topts;
    std::string diag_path;
    tree->add_option("--input", input)->required();
    tree->add_option("--K", topts.K);
    tree->add_option("--B", topts.B);
    tree->add_option("--diag", diag_path, "write diagnostics as JSON");

    auto* tour = app.add_subcommand("tour-greedy", "greedy rainbow tour with reserve completion");
    TourOptions tour_opts;
    tour->add_option("--input", input)->required();
    tour->add_option("--eps", tour_opts.eps);
    tour->add_option("--C", tour_opts.C);
    tour->add_option("--budget", tour_opts.restarts, "Hamilton search restarts");
    tour->add_flag("!--no-polish", tour_opts.polish, "skip the color-preserving 2-opt");
    tour->add_option("--diag", diag_path, "write diagnostics as JSON");

    auto* exp = app.add_subcommand("experiment", "seeded Monte Carlo experiment to CSV");
    ExperimentConfig cfg;
    std::vector<std::string> grid;
    std::string out_path;
    exp->add_option("--kind", cfg.kind)->required()->check(CLI::IsMember(experiment_kinds()));
    exp->add_option("--n-grid", grid, "comma separated n values")->required();
    exp->add_option("--seeds", cfg.seeds);
    exp->add_option("--master-seed", cfg.master_seed);
    exp->add_option("--q-rule", cfg.q_rule, "n-1, n, 2n, n^3, eps or none");
    exp->add_option("--K", cfg.K);
    exp->add_option("--B", cfg.B);
    exp->add_option("--eps", cfg.eps);
    exp->add_option("--C", cfg.C);
    exp->add_option("--budget", cfg.budget);
    exp->add_flag("!--no-polish", cfg.polish);
    exp->add_option("--copy-eps", cfg.copy_eps);
    exp->add_option("--copy-D", cfg.copy_D);
    exp->add_option("--threads", cfg.threads);
    exp->add_flag("--timing", cfg.timing, "record wall_ms (breaks byte-identical output)");
    exp->add_flag("--serial", "run cells without OpenMP");
    exp->add_option("--out", out_path, "CSV path (default stdout)");

    auto* rerun = app.add_subcommand("rerun", "recompute one CSV row from its seed");
    std::string csv_path;
    std::size_t row_index = 0;
    rerun->add_option("--csv", csv_path)->required();
    rerun->add_option("--row", row_index, "0-based data row")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_config;
    }

    try {
        if (*gen) {
            if (gen_n < 1) throw ConfigError("--n must be positive");
            const SeedSpec seed{gen_seed};
            InstanceFile file;
            file.master_seed = gen_seed;
            file.instance = gen_kind == "euclid" ? gen_euclidean(gen_n, gen_scale, seed) : gen_uniform_costs(gen_n, seed);
            const int q = gen_q >= 0 ? gen_q : std::max(1, gen_n - 1);
            file.coloring = color_edges(file.instance.edges(), q, seed);
            if (gen_out.empty()) {
                write_instance(std::cout, file);
            } else {
                save_instance(gen_out, file);
            }
            return exit_ok;
        }
        if (*constants) {
            WastlundOptions w;
            w.intervals = intervals;
            std::printf("zeta3 %.15f\n", zeta3());
            std::printf("wastlund_tau %.12f\n", wastlund_constant(w));
            return exit_ok;
        }
        if (*mst) {
            const auto f = load_input(input);
            const auto t = kruskal_mst(f.instance);
            std::cout << json{{"cost", t.total_cost}, {"edges", edges_json(t.edges)}}.dump() << '\n';
            return exit_ok;
        }
        if (*rmst) {
            const auto f = load_input(input);
            const auto r = min_rainbow_spanning_tree(f.instance, f.coloring);
            json out{{"feasible", r.feasible}, {"max_common_rank", r.max_common_rank}};
            if (r.feasible) {
                out["cost"] = r.tree.total_cost;
                out["edges"] = edges_json(r.tree.edges);
            }
            if (with_oracle) {
                if (f.instance.n() > oracle::max_tree_n) throw ConfigError("--oracle needs n <= 8");
                const auto b = oracle::brute_rainbow_mst(f.instance, f.coloring);
                out["oracle_feasible"] = b.feasible;
                if (b.feasible) out["oracle_cost"] = b.cost;
                const bool agree = b.feasible == r.feasible && (!b.feasible || b.cost == r.tree.total_cost);
                out["oracle_agrees"] = agree;
                std::cout << out.dump() << '\n';
                if (!agree) return exit_failed;
            } else {
                std::cout << out.dump() << '\n';
            }
            return r.feasible ? exit_ok : exit_failed;
        }
        if (*tree) {
            const auto f = load_input(input);
            const auto r = construct_tree(f.instance, f.coloring, topts, SeedSpec{f.master_seed});
            const auto& d = r.diag;
            json diag{{"E1", d.e1},
                      {"E2", d.e2},
                      {"EA", d.ea},
                      {"gamma_weight", d.gamma_weight},
                      {"matching_size", d.matching_size},
                      {"deficiency", d.deficiency},
                      {"levels", d.levels},
                      {"A_strict", d.A_strict},
                      {"A_members", d.A_members},
                      {"standard_palette", d.standard_palette},
                      {"success", r.success}};
            if (!d.standard_palette) std::cerr << "warning: q != n-1, outside the construction's setting\n";
            write_diag(diag_path, diag);
            json out{{"success", r.success}};
            if (r.success) {
                out["cost"] = r.tree.total_cost;
                out["edges"] = edges_json(r.tree.edges);
            } else {
                out["error"] = "MatchingFailed";
                out["deficiency"] = d.deficiency;
            }
            std::cout << out.dump() << '\n';
            return r.success ? exit_ok : exit_failed;
        }
        if (*tour) {
            const auto f = load_input(input);
            const auto r = rainbow_tour(f.instance, f.coloring, tour_opts, SeedSpec{f.master_seed});
            const auto& d = r.diag;
            json diag{{"r", d.r},
                      {"k0", d.k0},
                      {"C_used", d.C_used},
                      {"greedy_cost", d.greedy_cost},
                      {"completion_cost", d.completion_cost},
                      {"polish_gain", d.polish_gain},
                      {"skipped_cycle", d.skipped_cycle},
                      {"skipped_degree", d.skipped_degree},
                      {"skipped_color", d.skipped_color},
                      {"lambda_exceed_fraction", d.lambda_exceed_fraction},
                      {"gamma1", d.gamma1},
                      {"gamma2", d.gamma2},
                      {"retries", d.retries},
                      {"stage", to_string(d.stage)},
                      {"success", r.success}};
            write_diag(diag_path, diag);
            json out{{"success", r.success}};
            if (r.success) {
                out["cost"] = r.tour.total_cost;
                out["order"] = r.tour.order;
            } else {
                out["error"] = r.failure;
            }
            std::cout << out.dump() << '\n';
            return r.success ? exit_ok : exit_failed;
        }
        if (*exp) {
            cfg.n_grid = parse_grid(grid);
            const bool serial = exp->count("--serial") > 0;
            const auto res = serial ? run_experiment_serial(cfg) : run_experiment(cfg);
            if (out_path.empty()) {
                write_csv(std::cout, res);
            } else {
                std::ofstream f(out_path);
                if (!f) throw ConfigError("cannot write " + out_path);
                write_csv(f, res);
            }
            return exit_ok;
        }
        if (*rerun) {
            std::ifstream f(csv_path);
            if (!f) throw ConfigError("cannot read " + csv_path);
            const auto rows = read_csv(f);
            if (row_index >= rows.size()) throw ConfigError("row index out of range");
            const auto& orig = rows[row_index];
            const auto again = rerun_row(orig);
            const bool same = again.success == orig.success && format_double(again.cost) == format_double(orig.cost);
            std::cout << json{{"solver", again.solver},
                              {"n", again.n},
                              {"seed", again.seed},
                              {"success", again.success},
                              {"cost", again.cost},
                              {"recorded_cost", orig.cost},
                              {"matches", same}}
                             .dump()
                      << '\n';
            return same ? exit_ok : exit_failed;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failed;
    }
    return exit_ok;
}
