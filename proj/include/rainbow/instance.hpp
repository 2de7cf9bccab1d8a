#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rainbow/rng.hpp"

namespace rainbow {

using EdgeId = std::uint64_t;

/// Canonical index of the unordered pair {i, j}: id = j(j-1)/2 + i with i < j.
constexpr EdgeId edge_id(int i, int j) {
    if (i > j) std::swap(i, j);
    return static_cast<EdgeId>(j) * static_cast<EdgeId>(j - 1) / 2 + static_cast<EdgeId>(i);
}

/// Inverse of edge_id; returns (i, j) with i < j.
std::pair<int, int> edge_endpoints(EdgeId id);

constexpr std::size_t edge_count(int n) {
    return n < 2 ? 0 : static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
}

struct Point {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point&, const Point&) = default;
};

enum class InstanceKind { euclid, uniform };

std::string to_string(InstanceKind kind);

/// A complete weighted graph on n vertices. Euclidean instances store points and
/// compute costs on demand; uniform-cost instances store the upper triangle in
/// EdgeId order. Immutable after construction.
class Instance {
public:
    Instance() = default;

    static Instance euclidean(std::vector<Point> points, double scale = 1.0);
    static Instance uniform_costs(int n, std::vector<double> costs);

    InstanceKind kind() const { return kind_; }
    bool is_euclidean() const { return kind_ == InstanceKind::euclid; }
    int n() const { return n_; }
    std::size_t edges() const { return edge_count(n_); }
    double scale() const { return scale_; }

    std::span<const Point> points() const { return points_; }
    std::span<const double> cost_table() const { return costs_; }

    double cost(int i, int j) const {
        if (kind_ == InstanceKind::euclid) {
            const double dx = points_[i].x - points_[j].x;
            const double dy = points_[i].y - points_[j].y;
            return std::sqrt(dx * dx + dy * dy);
        }
        return i == j ? 0.0 : costs_[edge_id(i, j)];
    }
    double cost(EdgeId e) const {
        auto [i, j] = edge_endpoints(e);
        return cost(i, j);
    }

private:
    InstanceKind kind_ = InstanceKind::euclid;
    int n_ = 0;
    double scale_ = 1.0;
    std::vector<Point> points_;
    std::vector<double> costs_;
};

/// Edge colors in EdgeId order, each in [0, q).
struct Coloring {
    int q = 0;
    std::vector<std::uint32_t> colors;

    int color(EdgeId e) const { return static_cast<int>(colors[e]); }
    int color(int i, int j) const { return static_cast<int>(colors[edge_id(i, j)]); }
    std::size_t size() const { return colors.size(); }
};

/// Throws std::invalid_argument unless the coloring covers every edge of an
/// n-vertex instance with colors below q.
void check_coloring(const Coloring& coloring, int n);

Instance gen_euclidean(int n, double scale, const SeedSpec& seed);
Instance gen_uniform_costs(int n, const SeedSpec& seed);
Coloring color_edges(std::size_t edge_count, int q, const SeedSpec& seed);

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& field, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", " + field + ": " + what),
          line_(line),
          field_(field) {}
    std::size_t line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

struct InstanceFile {
    Instance instance;
    Coloring coloring;
    std::uint64_t master_seed = 0;
};

/// Line 1: `kind n q master_seed`; then n lines `x y` (euclid) or n(n-1)/2 cost
/// lines (uniform), then n(n-1)/2 color lines, all in EdgeId order. Numbers are
/// written with 17 significant digits so a load/save cycle is bit-exact.
void write_instance(std::ostream& out, const InstanceFile& file);
InstanceFile read_instance(std::istream& in);
void save_instance(const std::filesystem::path& path, const InstanceFile& file);
InstanceFile load_instance(const std::filesystem::path& path);

}  // namespace rainbow
