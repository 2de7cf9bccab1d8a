#include "rainbow/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace rainbow {

std::pair<int, int> edge_endpoints(EdgeId id) {
    // j is the largest integer with j(j-1)/2 <= id.
    auto j = static_cast<EdgeId>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(id))) / 2.0);
    while (j * (j - 1) / 2 > id) --j;
    while ((j + 1) * j / 2 <= id) ++j;
    const EdgeId i = id - j * (j - 1) / 2;
    return {static_cast<int>(i), static_cast<int>(j)};
}

std::string to_string(InstanceKind kind) { return kind == InstanceKind::euclid ? "euclid" : "uniform"; }

Instance Instance::euclidean(std::vector<Point> points, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("euclidean instance: scale must be positive");
    Instance inst;
    inst.kind_ = InstanceKind::euclid;
    inst.n_ = static_cast<int>(points.size());
    inst.scale_ = scale;
    inst.points_ = std::move(points);
    return inst;
}

Instance Instance::uniform_costs(int n, std::vector<double> costs) {
    if (n < 0) throw std::invalid_argument("uniform instance: negative n");
    if (costs.size() != edge_count(n))
        throw std::invalid_argument("uniform instance: expected " + std::to_string(edge_count(n)) + " costs, got " +
                                    std::to_string(costs.size()));
    Instance inst;
    inst.kind_ = InstanceKind::uniform;
    inst.n_ = n;
    inst.costs_ = std::move(costs);
    return inst;
}

void check_coloring(const Coloring& coloring, int n) {
    if (coloring.size() != edge_count(n))
        throw std::invalid_argument("coloring has " + std::to_string(coloring.size()) + " entries, instance has " +
                                    std::to_string(edge_count(n)) + " edges");
    if (coloring.q < 0) throw std::invalid_argument("coloring: negative palette size");
    for (std::size_t e = 0; e < coloring.size(); ++e)
        if (coloring.colors[e] >= static_cast<std::uint32_t>(coloring.q))
            throw std::invalid_argument("coloring: edge " + std::to_string(e) + " has color " +
                                        std::to_string(coloring.colors[e]) + " >= q = " + std::to_string(coloring.q));
}

Instance gen_euclidean(int n, double scale, const SeedSpec& seed) {
    if (n < 0) throw std::invalid_argument("gen_euclidean: negative n");
    auto g = seed.stream("geometry");
    std::vector<Point> pts(static_cast<std::size_t>(n));
    for (auto& p : pts) {
        p.x = uniform01(g) * scale;
        p.y = uniform01(g) * scale;
    }
    return Instance::euclidean(std::move(pts), scale);
}

Instance gen_uniform_costs(int n, const SeedSpec& seed) {
    if (n < 0) throw std::invalid_argument("gen_uniform_costs: negative n");
    auto g = seed.stream("costs");
    std::vector<double> costs(edge_count(n));
    for (auto& c : costs) c = uniform_open01(g);
    return Instance::uniform_costs(n, std::move(costs));
}

Coloring color_edges(std::size_t count, int q, const SeedSpec& seed) {
    if (q <= 0 && count > 0) throw std::invalid_argument("color_edges: invalid palette size " + std::to_string(q));
    Coloring c;
    c.q = q;
    c.colors.resize(count);
    auto g = seed.stream("colors");
    for (auto& col : c.colors) col = static_cast<std::uint32_t>(uniform_below(g, static_cast<std::uint64_t>(q)));
    return c;
}

namespace {

void put_double(std::ostream& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    std::vector<std::string> fields(std::size_t expected, const std::string& what) {
        std::string line;
        if (!std::getline(in_, line)) throw ParseError(line_no_ + 1, what, "unexpected end of file");
        ++line_no_;
        std::vector<std::string> out;
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) out.push_back(tok);
        if (out.size() != expected)
            throw ParseError(line_no_, what,
                             "expected " + std::to_string(expected) + " fields, got " + std::to_string(out.size()));
        return out;
    }

    std::size_t line() const { return line_no_; }

    void expect_eof() {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw ParseError(line_no_, "trailer", "unexpected content after colors");
        }
    }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

double parse_double(const std::string& s, std::size_t line, const std::string& field) {
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw ParseError(line, field, "not a number: '" + s + "'");
    return v;
}

template <typename Int>
Int parse_int(const std::string& s, std::size_t line, const std::string& field) {
    Int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw ParseError(line, field, "not an integer: '" + s + "'");
    return v;
}

}  // namespace

void write_instance(std::ostream& out, const InstanceFile& file) {
    const auto& inst = file.instance;
    out << to_string(inst.kind()) << ' ' << inst.n() << ' ' << file.coloring.q << ' ' << file.master_seed << '\n';
    if (inst.is_euclidean()) {
        for (const auto& p : inst.points()) {
            put_double(out, p.x);
            out << ' ';
            put_double(out, p.y);
            out << '\n';
        }
    } else {
        for (double c : inst.cost_table()) {
            put_double(out, c);
            out << '\n';
        }
    }
    for (auto c : file.coloring.colors) out << c << '\n';
}

InstanceFile read_instance(std::istream& in) {
    LineReader r(in);
    auto header = r.fields(4, "header");
    const auto& kind = header[0];
    if (kind != "euclid" && kind != "uniform") throw ParseError(1, "kind", "unknown kind '" + kind + "'");
    const int n = parse_int<int>(header[1], 1, "n");
    const int q = parse_int<int>(header[2], 1, "q");
    if (n < 0) throw ParseError(1, "n", "negative vertex count");
    if (q < 0) throw ParseError(1, "q", "negative palette size");

    InstanceFile file;
    file.master_seed = parse_int<std::uint64_t>(header[3], 1, "master_seed");
    const std::size_t m = edge_count(n);
    if (kind == "euclid") {
        std::vector<Point> pts(static_cast<std::size_t>(n));
        double max_coord = 0.0;
        for (auto& p : pts) {
            auto f = r.fields(2, "point");
            p.x = parse_double(f[0], r.line(), "x");
            p.y = parse_double(f[1], r.line(), "y");
            if (p.x < 0 || p.y < 0) throw ParseError(r.line(), "point", "negative coordinate");
            max_coord = std::max({max_coord, p.x, p.y});
        }
        // The side length is not stored; recover the two conventions in use.
        double scale = 1.0;
        if (max_coord > 1.0) scale = max_coord <= std::sqrt(static_cast<double>(n)) ? std::sqrt(double(n)) : max_coord;
        file.instance = Instance::euclidean(std::move(pts), scale);
    } else {
        std::vector<double> costs(m);
        for (auto& c : costs) {
            auto f = r.fields(1, "cost");
            c = parse_double(f[0], r.line(), "cost");
            if (c < 0 || c > 1) throw ParseError(r.line(), "cost", "outside [0,1]");
        }
        file.instance = Instance::uniform_costs(n, std::move(costs));
    }
    file.coloring.q = q;
    file.coloring.colors.resize(m);
    for (auto& col : file.coloring.colors) {
        auto f = r.fields(1, "color");
        auto v = parse_int<std::uint32_t>(f[0], r.line(), "color");
        if (v >= static_cast<std::uint32_t>(q))
            throw ParseError(r.line(), "color", "color " + f[0] + " is not below q = " + std::to_string(q));
        col = v;
    }
    r.expect_eof();
    return file;
}

void save_instance(const std::filesystem::path& path, const InstanceFile& file) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_instance(out, file);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

InstanceFile load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_instance(in);
}

}  // namespace rainbow
