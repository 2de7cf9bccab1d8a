#include "doctest.h"
#include "rainbow/instance.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

using namespace rainbow;

namespace {

// E|P - Q| for independent uniform points in the unit square, as the integral
// of |(u, v)| against the density 4(1-u)(1-v) of the coordinate differences.
double mean_unit_square_distance() {
    using boost::math::quadrature::gauss_kronrod;
    auto inner = [](double u) {
        return gauss_kronrod<double, 61>::integrate(
            [u](double v) { return 4.0 * (1.0 - u) * (1.0 - v) * std::hypot(u, v); }, 0.0, 1.0, 15, 1e-13);
    };
    return gauss_kronrod<double, 61>::integrate(inner, 0.0, 1.0, 15, 1e-12);
}

}  // namespace

TEST_CASE("edge ids enumerate unordered pairs bijectively") {
    EdgeId expect = 0;
    for (int j = 1; j < 100; ++j)
        for (int i = 0; i < j; ++i) {
            CHECK(edge_id(i, j) == expect);
            CHECK(edge_id(j, i) == expect);
            const auto [a, b] = edge_endpoints(expect);
            CHECK(a == i);
            CHECK(b == j);
            ++expect;
        }
    CHECK(edge_count(100) == expect);
    CHECK(edge_count(0) == 0);
    CHECK(edge_count(1) == 0);
}

TEST_CASE("gen_euclidean") {
    CHECK(gen_euclidean(0, 1.0, {1}).edges() == 0);
    const auto two = gen_euclidean(2, 1.0, {1});
    CHECK(two.edges() == 1);
    CHECK(two.cost(0, 1) >= 0.0);
    CHECK(two.cost(0, 1) <= std::sqrt(2.0));

    const auto a = gen_euclidean(50, 3.0, {9}), b = gen_euclidean(50, 3.0, {9});
    for (int v = 0; v < 50; ++v) {
        CHECK(a.points()[v] == b.points()[v]);
        CHECK(a.points()[v].x <= 3.0);
        CHECK(a.points()[v].y >= 0.0);
    }
    CHECK_FALSE(gen_euclidean(50, 3.0, {10}).points()[0] == a.points()[0]);
}

TEST_CASE("mean pairwise distance matches the quadrature value") {
    const double oracle = mean_unit_square_distance();
    CHECK(oracle == doctest::Approx(0.52141).epsilon(1e-5));
    const int n = 10000;
    const auto inst = gen_euclidean(n, 1.0, {2024});
    double sum = 0.0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) sum += inst.cost(i, j);
    CHECK(std::abs(sum / static_cast<double>(inst.edges()) - oracle) < 0.01);
}

TEST_CASE("gen_uniform_costs") {
    CHECK(gen_uniform_costs(1, {1}).edges() == 0);
    const auto three = gen_uniform_costs(3, {1});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(three.cost(i, j) == three.cost(j, i));
            if (i != j) CHECK((three.cost(i, j) > 0.0 && three.cost(i, j) < 1.0));
        }
    CHECK(three.cost(1, 1) == 0.0);
    const auto big = gen_uniform_costs(1000, {5});
    double sum = 0.0;
    for (double c : big.cost_table()) sum += c;
    CHECK(std::abs(sum / static_cast<double>(big.edges()) - 0.5) < 0.005);
}

TEST_CASE("color_edges") {
    CHECK(color_edges(0, 5, {1}).size() == 0);
    CHECK_THROWS_AS(color_edges(3, 0, {1}), std::invalid_argument);
    const auto one = color_edges(100, 1, {1});
    for (auto c : one.colors) CHECK(c == 0);
    const auto many = color_edges(100000, 10, {77});
    std::vector<int> freq(10, 0);
    for (auto c : many.colors) ++freq[c];
    for (int f : freq) CHECK(std::abs(f - 10000) <= 300);
}

TEST_CASE("streams are independent") {
    // Coloring draws from its own stream, so the geometry of a seed does not
    // depend on whether or how the instance was colored.
    const SeedSpec s{31};
    const auto before = gen_euclidean(20, 1.0, s);
    (void)color_edges(before.edges(), 19, s);
    const auto after = gen_euclidean(20, 1.0, s);
    for (int v = 0; v < 20; ++v) CHECK(before.points()[v] == after.points()[v]);
    const auto c1 = color_edges(190, 19, s);
    const auto c2 = color_edges(190, 19, SeedSpec{32});
    CHECK(c1.colors != c2.colors);
}

TEST_CASE("file round trip is bit exact") {
    for (auto kind : {InstanceKind::euclid, InstanceKind::uniform}) {
        const SeedSpec s{123};
        InstanceFile f;
        f.master_seed = 123;
        f.instance = kind == InstanceKind::euclid ? gen_euclidean(5, 1.0, s) : gen_uniform_costs(4, s);
        f.coloring = color_edges(f.instance.edges(), 3, s);
        std::stringstream first;
        write_instance(first, f);
        const auto loaded = read_instance(first);
        std::stringstream second;
        write_instance(second, loaded);
        CHECK(first.str() == second.str());
        CHECK(loaded.instance.n() == f.instance.n());
        CHECK(loaded.coloring.colors == f.coloring.colors);
        for (int i = 0; i < f.instance.n(); ++i)
            for (int j = 0; j < f.instance.n(); ++j) CHECK(loaded.instance.cost(i, j) == f.instance.cost(i, j));
    }
}

TEST_CASE("parse errors name the line") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_instance(in);
    };
    CHECK_NOTHROW(parse("uniform 3 2 1\n0.5\n0.25\n0.75\n0\n1\n1\n"));
    try {
        parse("uniform 3 2 1\n0.5\n0.25\n0.75\n0\n2\n1\n");
        FAIL("color >= q accepted");
    } catch (const ParseError& e) {
        CHECK(e.line() == 6);
    }
    CHECK_THROWS_AS(parse("uniform 3 2 1\n0.5\n1.5\n0.75\n0\n1\n1\n"), ParseError);
    CHECK_THROWS_AS(parse("euclid 2 1 1\n0 0\n-1 0\n0\n"), ParseError);
    CHECK_THROWS_AS(parse("euclid 2 1 1\n0 0\n1 0\n"), ParseError);
    CHECK_THROWS_AS(parse("euclid 2 1 1\n0 0\n1 0\n0\nextra\n"), ParseError);
    CHECK_THROWS_AS(parse("square 2 1 1\n"), ParseError);
    CHECK_THROWS_AS(parse("euclid two 1 1\n"), ParseError);
}

TEST_CASE("loaded side length is inferred from the coordinates") {
    const SeedSpec s{4};
    for (double scale : {1.0, 5.0}) {
        InstanceFile f;
        f.instance = gen_euclidean(25, scale, s);
        f.coloring = color_edges(f.instance.edges(), 24, s);
        std::stringstream io;
        write_instance(io, f);
        CHECK(read_instance(io).instance.scale() == scale);
    }
}
