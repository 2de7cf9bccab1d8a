#include "rainbow/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include <omp.h>

#include "json.hpp"
#include "rainbow/baselines.hpp"
#include "rainbow/colorstats.hpp"
#include "rainbow/instance.hpp"
#include "rainbow/rainbow_exact.hpp"
#include "rainbow/tour_greedy.hpp"
#include "rainbow/tree_construct.hpp"

namespace rainbow {

using nlohmann::json;

const std::vector<std::string>& experiment_kinds() {
    static const std::vector<std::string> kinds{"mst-gap",         "tsp-gap",        "repeat", "copies",
                                                "mst-uniform",     "rainbow-uniform", "tree-construct", "tour"};
    return kinds;
}

std::string default_q_rule(const std::string& kind) {
    if (kind == "mst-gap" || kind == "rainbow-uniform" || kind == "tree-construct") return "n-1";
    if (kind == "tsp-gap" || kind == "tour") return "eps";
    return "none";
}

namespace {

const std::string& q_rule_of(const ExperimentConfig& c, std::string& scratch) {
    if (!c.q_rule.empty()) return c.q_rule;
    scratch = default_q_rule(c.kind);
    return scratch;
}

int min_n(const std::string& kind) {
    if (kind == "tsp-gap" || kind == "tour") return 5;
    if (kind == "repeat") return 1;
    return 2;
}

}  // namespace

void validate(const ExperimentConfig& c) {
    const auto& kinds = experiment_kinds();
    if (std::find(kinds.begin(), kinds.end(), c.kind) == kinds.end())
        throw ConfigError("unknown experiment kind '" + c.kind + "'");
    std::string scratch;
    const auto& rule = q_rule_of(c, scratch);
    static const std::vector<std::string> rules{"n-1", "n", "2n", "n^3", "eps", "none"};
    if (std::find(rules.begin(), rules.end(), rule) == rules.end())
        throw ConfigError("unknown q rule '" + rule + "'");
    const bool colored = c.kind != "repeat" && c.kind != "copies" && c.kind != "mst-uniform";
    if (colored && rule == "none") throw ConfigError("kind '" + c.kind + "' needs a palette");
    if (c.seeds < 0) throw ConfigError("seeds must be non-negative");
    for (int n : c.n_grid) {
        if (n < min_n(c.kind))
            throw ConfigError("n = " + std::to_string(n) + " too small for kind '" + c.kind + "'");
        if (rule == "n^3" && n > 1290) throw ConfigError("q = n^3 overflows for n = " + std::to_string(n));
    }
    if (c.K < 1) throw ConfigError("K must be at least 1");
    if (!(c.B > 0.0)) throw ConfigError("B must be positive");
    if (!(c.eps > 0.0)) throw ConfigError("eps must be positive");
    if (!(c.C > 0.0)) throw ConfigError("C must be positive");
    if (c.budget < 1) throw ConfigError("budget must be at least 1");
    if (c.steps_per_vertex < 1) throw ConfigError("steps per vertex must be at least 1");
    if (!(c.copy_eps > 0.0 && c.copy_eps < 0.5 && c.copy_D > 0.5))
        throw ConfigError("copy tolerances need 0 < eps < 1/2 < D");
    if (c.threads < 0) throw ConfigError("threads must be non-negative");
}

int resolve_q(const ExperimentConfig& c, int n) {
    std::string scratch;
    const auto& rule = q_rule_of(c, scratch);
    if (rule == "n-1") return n - 1;
    if (rule == "n") return n;
    if (rule == "2n") return 2 * n;
    if (rule == "n^3") return n * n * n;
    if (rule == "eps") return palette_size(n, c.eps);
    return 0;
}

std::uint64_t cell_seed(std::uint64_t master, int n, int index) {
    return mix_seed(mix_seed(master, static_cast<std::uint64_t>(n)), static_cast<std::uint64_t>(index));
}

int effective_threads(int requested) {
    int t = requested > 0 ? requested : omp_get_max_threads();
    if (const char* cap = std::getenv("RAINBOW_OPT_THREADS")) {
        const int c = std::atoi(cap);
        if (c > 0) t = std::min(t, c);
    }
    return std::max(1, t);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

json params_json(const ExperimentConfig& c, int seed_index) {
    std::string scratch;
    return json{{"K", c.K},
                {"B", c.B},
                {"eps", c.eps},
                {"C", c.C},
                {"budget", c.budget},
                {"steps_per_vertex", c.steps_per_vertex},
                {"polish", c.polish},
                {"q_rule", q_rule_of(c, scratch)},
                {"copy_eps", c.copy_eps},
                {"copy_D", c.copy_D},
                {"master_seed", c.master_seed},
                {"seed_index", seed_index},
                {"rng", std::string(rng_version)}};
}

using Clock = std::chrono::steady_clock;

class CellRunner {
public:
    CellRunner(const ExperimentConfig& c, int n, std::uint64_t seed, int seed_index)
        : c_(c), n_(n), q_(resolve_q(c, n)), seed_(seed), spec_{seed}, params_(params_json(c, seed_index)) {}

    CellOutcome run() {
        const auto& k = c_.kind;
        if (k == "mst-gap") return mst_gap();
        if (k == "tsp-gap") return tsp_gap();
        if (k == "repeat") return repeat();
        if (k == "copies") return copies();
        if (k == "mst-uniform") return mst_uniform();
        if (k == "rainbow-uniform") return rainbow_uniform();
        if (k == "tree-construct") return tree();
        if (k == "tour") return tour();
        throw ConfigError("unknown experiment kind '" + k + "'");
    }

private:
    // Runs f, turning exceptions into a failed row.
    template <class F>
    RunRecord row(const std::string& solver, F&& f) {
        RunRecord r{c_.kind, n_, q_, seed_, solver, false, 0.0, 0.0, ""};
        json extra = params_;
        const auto t0 = Clock::now();
        try {
            f(r, extra);
        } catch (const std::exception& e) {
            r.success = false;
            r.cost = 0.0;
            extra["error"] = e.what();
        }
        if (c_.timing) r.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        r.extra_json = extra.dump();
        return r;
    }

    Instance euclid(double scale = 1.0) const { return gen_euclidean(n_, scale, spec_); }
    Coloring colors(std::size_t edges) const { return color_edges(edges, q_, spec_); }

    TourOptions tour_options() const {
        TourOptions o;
        o.eps = c_.eps;
        o.C = c_.C;
        o.restarts = c_.budget;
        o.steps_per_vertex = c_.steps_per_vertex;
        o.polish = c_.polish;
        return o;
    }

    static void put_tour_diag(json& extra, const TourDiagnostics& d) {
        extra["r"] = d.r;
        extra["k0"] = d.k0;
        extra["C_used"] = d.C_used;
        extra["greedy_cost"] = d.greedy_cost;
        extra["completion_cost"] = d.completion_cost;
        extra["polish_gain"] = d.polish_gain;
        extra["polish_moves"] = d.polish_moves;
        extra["skipped_cycle"] = d.skipped_cycle;
        extra["skipped_degree"] = d.skipped_degree;
        extra["skipped_color"] = d.skipped_color;
        extra["lambda_exceed_fraction"] = d.lambda_exceed_fraction;
        extra["gamma1"] = d.gamma1;
        extra["gamma2"] = d.gamma2;
        extra["mean_fresh_usage"] = d.mean_fresh_usage;
        extra["retries"] = d.retries;
        extra["stall_retries"] = d.stall_retries;
        extra["stage"] = to_string(d.stage);
    }

    CellOutcome mst_gap() {
        CellOutcome out;
        const auto inst = euclid();
        const auto col = colors(inst.edges());
        double zstar = 0.0;
        bool kruskal_ok = false;
        out.rows.push_back(row("kruskal", [&](RunRecord& r, json&) {
            zstar = kruskal_mst(inst).total_cost;
            r.cost = zstar;
            r.success = kruskal_ok = true;
        }));
        out.rows.push_back(row("rainbow-exact", [&](RunRecord& r, json& extra) {
            const auto res = min_rainbow_spanning_tree(inst, col);
            r.success = res.feasible;
            r.cost = res.feasible ? res.tree.total_cost : 0.0;
            extra["feasible"] = res.feasible;
            extra["max_common_rank"] = res.max_common_rank;
            extra["candidates"] = res.candidates;
            extra["rounds"] = res.rounds;
            if (res.feasible && kruskal_ok) {
                extra["gap"] = r.cost - zstar;
                out.success = true;
                out.metric = out.fit_value = r.cost - zstar;
            }
        }));
        return out;
    }

    CellOutcome tsp_gap() {
        CellOutcome out;
        const auto inst = euclid();
        const auto col = colors(inst.edges());
        const auto opts = tour_options();
        double zstar = 0.0;
        bool heur_ok = false;
        out.rows.push_back(row("tsp-heuristic", [&](RunRecord& r, json&) {
            zstar = tsp_heuristic(inst, opts.two_opt).total_cost;
            r.cost = zstar;
            r.success = heur_ok = true;
        }));
        out.rows.push_back(row("rainbow-tour", [&](RunRecord& r, json& extra) {
            const auto res = rainbow_tour(inst, col, opts, spec_);
            r.success = res.success;
            r.cost = res.success ? res.tour.total_cost : 0.0;
            put_tour_diag(extra, res.diag);
            extra["comparison"] = "heuristic-vs-heuristic";
            if (!res.success) extra["failure"] = res.failure;
            if (res.success && heur_ok) {
                extra["gap"] = r.cost - zstar;
                out.success = true;
                out.metric = out.fit_value = r.cost - zstar;
            }
        }));
        return out;
    }

    CellOutcome repeat() {
        CellOutcome out;
        q_ = n_;
        out.rows.push_back(row("repeat", [&](RunRecord& r, json& extra) {
            const auto rep = empirical_repeat_count(static_cast<std::uint64_t>(n_), static_cast<std::uint64_t>(n_), spec_);
            r.success = true;
            r.cost = rep.fraction;
            extra["alpha"] = rep.alpha;
            extra["beta"] = rep.beta;
            extra["expected"] = rep.expected;
            extra["expected_fraction"] = rep.expected / static_cast<double>(rep.beta);
            extra["repeated"] = rep.empirical;
            out.success = true;
            out.metric = rep.fraction;
            out.fit_value = static_cast<double>(rep.empirical);
        }));
        return out;
    }

    CellOutcome copies() {
        CellOutcome out;
        out.rows.push_back(row("pair-copies", [&](RunRecord& r, json& extra) {
            const auto inst = euclid(std::sqrt(static_cast<double>(n_)));
            const auto set = find_pair_copies(inst.points(), c_.copy_eps, c_.copy_D);
            const double kappa = static_cast<double>(set.copies.size());
            r.success = kappa > 0;
            r.cost = kappa;
            extra["kappa"] = set.copies.size();
            extra["kappa_over_n"] = kappa / n_;
            out.success = r.success;
            out.metric = kappa / n_;
            out.fit_value = kappa;
        }));
        return out;
    }

    CellOutcome mst_uniform() {
        CellOutcome out;
        out.rows.push_back(row("kruskal", [&](RunRecord& r, json&) {
            const auto inst = gen_uniform_costs(n_, spec_);
            r.cost = kruskal_mst(inst).total_cost;
            r.success = true;
            out.success = true;
            out.metric = out.fit_value = r.cost;
        }));
        return out;
    }

    CellOutcome rainbow_uniform() {
        CellOutcome out;
        out.rows.push_back(row("rainbow-exact", [&](RunRecord& r, json& extra) {
            const auto inst = gen_uniform_costs(n_, spec_);
            const auto col = colors(inst.edges());
            const auto res = min_rainbow_spanning_tree(inst, col);
            r.success = res.feasible;
            r.cost = res.feasible ? res.tree.total_cost : 0.0;
            extra["feasible"] = res.feasible;
            extra["max_common_rank"] = res.max_common_rank;
            extra["candidates"] = res.candidates;
            extra["rounds"] = res.rounds;
            out.success = res.feasible;
            out.metric = out.fit_value = r.cost;
        }));
        return out;
    }

    CellOutcome tree() {
        CellOutcome out;
        out.rows.push_back(row("tree-construct", [&](RunRecord& r, json& extra) {
            const auto inst = euclid();
            const auto col = colors(inst.edges());
            TreeConstructOptions o;
            o.K = c_.K;
            o.B = c_.B;
            const auto res = construct_tree(inst, col, o, spec_);
            const auto& d = res.diag;
            r.success = res.success;
            r.cost = res.success ? res.tree.total_cost : 0.0;
            extra["E1"] = d.e1;
            extra["E2"] = d.e2;
            extra["EA"] = d.ea;
            extra["gamma_weight"] = d.gamma_weight;
            extra["matching_size"] = d.matching_size;
            extra["deficiency"] = d.deficiency;
            extra["levels"] = d.levels;
            extra["A_strict"] = d.A_strict;
            extra["A_members"] = d.A_members;
            extra["standard_palette"] = d.standard_palette;
            out.success = res.success;
            out.metric = r.cost / std::sqrt(static_cast<double>(n_));
            out.fit_value = r.cost;
        }));
        return out;
    }

    CellOutcome tour() {
        CellOutcome out;
        out.rows.push_back(row("rainbow-tour", [&](RunRecord& r, json& extra) {
            const auto inst = euclid();
            const auto col = colors(inst.edges());
            const auto res = rainbow_tour(inst, col, tour_options(), spec_);
            r.success = res.success;
            r.cost = res.success ? res.tour.total_cost : 0.0;
            put_tour_diag(extra, res.diag);
            if (!res.success) extra["failure"] = res.failure;
            extra["verified"] = res.success;  // rainbow_tour throws if its own check fails
            out.success = res.success;
            const double nn = static_cast<double>(n_);
            out.metric = r.cost / (std::sqrt(nn) * std::log(nn));
            out.fit_value = r.cost;
        }));
        return out;
    }

    const ExperimentConfig& c_;
    int n_;
    int q_;
    std::uint64_t seed_;
    SeedSpec spec_;
    json params_;
};

struct Cell {
    int n;
    int index;
    std::uint64_t seed;
};

std::vector<Cell> cells_of(const ExperimentConfig& c) {
    std::vector<Cell> cells;
    for (int n : c.n_grid)
        for (int i = 0; i < c.seeds; ++i) cells.push_back({n, i, cell_seed(c.master_seed, n, i)});
    return cells;
}

std::pair<std::string, std::string> metric_names(const std::string& kind) {
    if (kind == "mst-gap" || kind == "tsp-gap") return {"gap", "gap"};
    if (kind == "repeat") return {"repeat_fraction", "repeated_colors"};
    if (kind == "copies") return {"kappa_over_n", "kappa"};
    if (kind == "tree-construct") return {"cost_over_sqrt_n", "cost"};
    if (kind == "tour") return {"cost_over_sqrt_n_log_n", "cost"};
    return {"cost", "cost"};
}

ExperimentResult assemble(const ExperimentConfig& c, const std::vector<Cell>& cells,
                          std::vector<CellOutcome>& outcomes) {
    ExperimentResult res;
    res.config = c;
    std::tie(res.metric_name, res.fit_name) = metric_names(c.kind);
    for (auto& o : outcomes)
        for (auto& r : o.rows) res.rows.push_back(std::move(r));
    std::stable_sort(res.rows.begin(), res.rows.end(), [](const RunRecord& a, const RunRecord& b) {
        if (a.n != b.n) return a.n < b.n;
        if (a.seed != b.seed) return a.seed < b.seed;
        return a.solver < b.solver;
    });

    std::vector<int> ns = c.n_grid;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    std::vector<double> fit_ns, fit_means, fit_sems;
    for (int n : ns) {
        NSummary s;
        s.n = n;
        std::vector<double> metric, fit;
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (cells[k].n != n) continue;
            ++s.cells;
            if (!outcomes[k].success) continue;
            ++s.successes;
            metric.push_back(outcomes[k].metric);
            fit.push_back(outcomes[k].fit_value);
        }
        s.metric = mean_stats(metric);
        s.fit_value = mean_stats(fit);
        if (!metric.empty()) {
            s.metric_min = *std::min_element(metric.begin(), metric.end());
            s.metric_max = *std::max_element(metric.begin(), metric.end());
        }
        res.summary.push_back(s);
        if (s.fit_value.count > 0) {
            fit_ns.push_back(n);
            fit_means.push_back(s.fit_value.mean);
            fit_sems.push_back(s.fit_value.sem);
        }
    }
    res.fit = fit_scaling(fit_ns, fit_means, fit_sems);
    if (c.kind == "tsp-gap") res.notes.push_back("gap is heuristic-vs-heuristic: directional evidence only");
    return res;
}

}  // namespace

CellOutcome run_cell(const ExperimentConfig& config, int n, std::uint64_t seed, int seed_index) {
    return CellRunner(config, n, seed, seed_index).run();
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    validate(config);
    const auto cells = cells_of(config);
    std::vector<CellOutcome> outcomes(cells.size());
    const int threads = effective_threads(config.threads);
    const auto count = static_cast<long>(cells.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long k = 0; k < count; ++k) outcomes[k] = run_cell(config, cells[k].n, cells[k].seed, cells[k].index);
    return assemble(config, cells, outcomes);
}

ExperimentResult run_experiment_serial(const ExperimentConfig& config) {
    validate(config);
    const auto cells = cells_of(config);
    std::vector<CellOutcome> outcomes;
    outcomes.reserve(cells.size());
    for (const auto& cell : cells) outcomes.push_back(run_cell(config, cell.n, cell.seed, cell.index));
    return assemble(config, cells, outcomes);
}

namespace {

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string fmt10(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

void write_csv(std::ostream& out, const ExperimentResult& res) {
    out << "kind,n,q,seed,solver,success,cost,wall_ms,extra_json\n";
    for (const auto& r : res.rows) {
        out << r.kind << ',' << r.n << ',' << r.q << ',' << r.seed << ',' << r.solver << ',' << (r.success ? 1 : 0)
            << ',' << format_double(r.cost) << ',' << format_double(r.wall_ms) << ',' << csv_quote(r.extra_json)
            << '\n';
    }
    if (res.rows.empty()) return;
    out << "# summary kind=" << res.config.kind << " metric=" << res.metric_name << " fit_value=" << res.fit_name
        << '\n';
    for (const auto& s : res.summary) {
        out << "# n=" << s.n << " cells=" << s.cells << " success=" << s.successes
            << " metric_mean=" << fmt10(s.metric.mean) << " metric_sem=" << fmt10(s.metric.sem)
            << " metric_min=" << fmt10(s.metric_min) << " metric_max=" << fmt10(s.metric_max)
            << " fit_value_mean=" << fmt10(s.fit_value.mean) << '\n';
    }
    const auto& f = res.fit;
    out << "# fit power a=" << fmt10(f.a) << " b=" << fmt10(f.b) << " residual=" << fmt10(f.residual)
        << " ok=" << (f.ok ? 1 : 0) << '\n';
    out << "# fit sqrt_n_log_n a=" << fmt10(f.sqrtlog_a) << " residual=" << fmt10(f.sqrtlog_residual) << '\n';
    for (const auto& w : f.warnings) out << "# warning " << w << '\n';
    for (const auto& note : res.notes) out << "# note " << note << '\n';
}

std::string to_csv(const ExperimentResult& res) {
    std::ostringstream s;
    write_csv(s, res);
    return s.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

}  // namespace

std::vector<RunRecord> read_csv(std::istream& in) {
    std::vector<RunRecord> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#' || line.rfind("kind,", 0) == 0) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 9) throw ConfigError("csv line " + std::to_string(lineno) + ": expected 9 fields");
        try {
            RunRecord r;
            r.kind = f[0];
            r.n = std::stoi(f[1]);
            r.q = std::stoi(f[2]);
            r.seed = std::stoull(f[3]);
            r.solver = f[4];
            r.success = f[5] == "1";
            r.cost = std::stod(f[6]);
            r.wall_ms = std::stod(f[7]);
            r.extra_json = f[8];
            rows.push_back(std::move(r));
        } catch (const std::logic_error&) {
            throw ConfigError("csv line " + std::to_string(lineno) + ": malformed number");
        }
    }
    return rows;
}

ExperimentConfig config_from_record(const RunRecord& row) {
    json e;
    try {
        e = json::parse(row.extra_json);
    } catch (const json::exception& ex) {
        throw ConfigError(std::string("extra_json: ") + ex.what());
    }
    ExperimentConfig c;
    try {
        c.kind = row.kind;
        c.n_grid = {row.n};
        c.seeds = 1;
        c.master_seed = e.at("master_seed").get<std::uint64_t>();
        c.q_rule = e.at("q_rule").get<std::string>();
        c.K = e.at("K").get<int>();
        c.B = e.at("B").get<double>();
        c.eps = e.at("eps").get<double>();
        c.C = e.at("C").get<double>();
        c.budget = e.at("budget").get<int>();
        c.steps_per_vertex = e.at("steps_per_vertex").get<int>();
        c.polish = e.at("polish").get<bool>();
        c.copy_eps = e.at("copy_eps").get<double>();
        c.copy_D = e.at("copy_D").get<double>();
        if (e.at("rng").get<std::string>() != rng_version)
            throw ConfigError("row was produced by generator " + e.at("rng").get<std::string>());
    } catch (const json::exception& ex) {
        throw ConfigError(std::string("extra_json: ") + ex.what());
    }
    validate(c);
    return c;
}

RunRecord rerun_row(const RunRecord& row) {
    const auto c = config_from_record(row);
    const int index = json::parse(row.extra_json).at("seed_index").get<int>();
    auto out = run_cell(c, row.n, row.seed, index);
    for (auto& r : out.rows)
        if (r.solver == row.solver) return r;
    throw ConfigError("solver '" + row.solver + "' not produced by kind '" + row.kind + "'");
}

}  // namespace rainbow
