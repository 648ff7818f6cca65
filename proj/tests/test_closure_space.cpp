/**
 * Closure/interior calculus on finite spaces: graph, metric, and relation
 * constructors, minimal neighborhoods, idempotence detection, and the
 * randomized closure-axiom suite.
 */

#include <catch2/catch_amalgamated.hpp>

#include <cech/closure_space.hpp>
#include <cech/properties.hpp>

#include <stdexcept>
#include <utility>
#include <vector>

using cech::ClosureSpace;
using cech::Metric;
using cech::PointSet;

namespace {

std::vector<std::pair<std::size_t, std::size_t>> cycle_edges(std::size_t m) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t v = 0; v < m; ++v) edges.emplace_back(v, (v + 1) % m);
    return edges;
}

}  // namespace

TEST_CASE("cycle on eight vertices") {
    const ClosureSpace space = ClosureSpace::from_graph(8, cycle_edges(8));
    REQUIRE(space.size() == 8);

    // closure of a vertex is the vertex plus its two neighbors
    REQUIRE(space.singleton_closure(0) == PointSet::of(8, {7, 0, 1}));
    REQUIRE(space.closure(PointSet::of(8, {0})) == PointSet::of(8, {7, 0, 1}));
    REQUIRE(space.closure(PointSet::of(8, {0, 4})) == PointSet::of(8, {7, 0, 1, 3, 4, 5}));

    // the graph is undirected, so minimal neighborhoods equal closures
    REQUIRE(space.minimal_neighborhood(0) == PointSet::of(8, {7, 0, 1}));
    REQUIRE(space.minimal_neighborhood(3) == PointSet::of(8, {2, 3, 4}));

    // the interior of a 3-arc is its midpoint
    REQUIRE(space.interior(PointSet::of(8, {7, 0, 1})) == PointSet::of(8, {0}));
    REQUIRE(space.interior(PointSet::of(8, {0})) == PointSet(8));

    // c(c({0})) = {6,...,2} strictly grows, so the space is not topological
    REQUIRE(space.closure(space.singleton_closure(0)) == PointSet::of(8, {6, 7, 0, 1, 2}));
    REQUIRE_FALSE(space.topological());

    REQUIRE(space.universe() == PointSet::full(8));
    REQUIRE(space.interior(space.universe()) == space.universe());
    REQUIRE(space.closure(PointSet(8)) == PointSet(8));
}

TEST_CASE("directed edges are kept one-way") {
    const ClosureSpace space = ClosureSpace::from_graph(3, {{0, 1}, {1, 2}}, /*directed=*/true);
    REQUIRE(space.singleton_closure(0) == PointSet::of(3, {0, 1}));
    REQUIRE(space.singleton_closure(2) == PointSet::of(3, {2}));
    // V_x collects the points whose closure reaches x, i.e. the columns
    REQUIRE(space.minimal_neighborhood(0) == PointSet::of(3, {0}));
    REQUIRE(space.minimal_neighborhood(1) == PointSet::of(3, {0, 1}));
    REQUIRE(space.minimal_neighborhood(2) == PointSet::of(3, {1, 2}));
    REQUIRE(space.interior(PointSet::of(3, {1, 2})) == PointSet::of(3, {2}));
}

TEST_CASE("graph input validation") {
    REQUIRE_THROWS_AS(ClosureSpace::from_graph(3, {{0, 3}}), std::invalid_argument);
    const ClosureSpace empty = ClosureSpace::from_graph(0, {});
    REQUIRE(empty.size() == 0);
    REQUIRE(empty.topological());
}

TEST_CASE("metric balls on a line") {
    Eigen::MatrixXd pts(3, 1);
    pts << 0.0, 1.0, 2.5;
    const ClosureSpace space = ClosureSpace::from_metric(pts, Metric::Euclidean, 1.0);
    REQUIRE(space.singleton_closure(0) == PointSet::of(3, {0, 1}));
    REQUIRE(space.singleton_closure(1) == PointSet::of(3, {0, 1}));
    REQUIRE(space.singleton_closure(2) == PointSet::of(3, {2}));
    REQUIRE(space.topological());
}

TEST_CASE("metric kinds disagree where they should") {
    Eigen::MatrixXd pts(2, 2);
    pts << 0.0, 0.0, 1.0, 1.0;  // diagonal pair: Chebyshev 1, Euclidean sqrt(2), Manhattan 2
    const PointSet both = PointSet::full(2);
    const PointSet self0 = PointSet::of(2, {0});

    REQUIRE(ClosureSpace::from_metric(pts, Metric::Chebyshev, 1.0).singleton_closure(0) == both);
    REQUIRE(ClosureSpace::from_metric(pts, Metric::Euclidean, 1.0).singleton_closure(0) == self0);
    REQUIRE(ClosureSpace::from_metric(pts, Metric::Euclidean, 1.5).singleton_closure(0) == both);
    REQUIRE(ClosureSpace::from_metric(pts, Metric::Manhattan, 1.5).singleton_closure(0) == self0);
    REQUIRE(ClosureSpace::from_metric(pts, Metric::Manhattan, 2.0).singleton_closure(0) == both);
}

TEST_CASE("metric edge cases") {
    Eigen::MatrixXd pts(3, 1);
    pts << 0.0, 2.0, 5.0;

    // r = 0 on distinct points: discrete, hence topological
    const ClosureSpace discrete = ClosureSpace::from_metric(pts, Metric::Euclidean, 0.0);
    for (std::size_t x = 0; x < 3; ++x) {
        REQUIRE(discrete.singleton_closure(x) == PointSet::of(3, {x}));
        REQUIRE(discrete.minimal_neighborhood(x) == PointSet::of(3, {x}));
    }
    REQUIRE(discrete.topological());

    // coincident points merge even at r = 0
    Eigen::MatrixXd dup(2, 1);
    dup << 3.0, 3.0;
    REQUIRE(ClosureSpace::from_metric(dup, Metric::Euclidean, 0.0).singleton_closure(0) ==
            PointSet::full(2));

    // zero-dimensional samples coincide entirely
    REQUIRE(ClosureSpace::from_metric(Eigen::MatrixXd(3, 0), Metric::Manhattan, 0.0)
                .singleton_closure(1) == PointSet::full(3));

    REQUIRE_THROWS_AS(ClosureSpace::from_metric(pts, Metric::Euclidean, -0.5),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(
        ClosureSpace::from_metric(pts, Metric::Euclidean, std::nan("")),
        std::invalid_argument);
    Eigen::MatrixXd bad(1, 1);
    bad << std::numeric_limits<double>::infinity();
    REQUIRE_THROWS_AS(ClosureSpace::from_metric(bad, Metric::Euclidean, 1.0),
                      std::invalid_argument);
}

TEST_CASE("relation constructor enforces reflexivity") {
    std::vector<PointSet> rows = {PointSet::from_bits("110"), PointSet::from_bits("011"),
                                  PointSet::from_bits("001")};
    const ClosureSpace space = ClosureSpace::from_relation(rows);
    REQUIRE(space.singleton_closure(1) == PointSet::of(3, {1, 2}));
    // c(c({0})) = c({0,1}) = {0,1,2} grows: not topological
    REQUIRE_FALSE(space.topological());

    rows[1].erase(1);
    REQUIRE_THROWS_WITH(ClosureSpace::from_relation(rows),
                        Catch::Matchers::ContainsSubstring("point 1"));

    std::vector<PointSet> ragged = {PointSet(2), PointSet(3)};
    ragged[0].insert(0);
    ragged[1].insert(1);
    REQUIRE_THROWS_AS(ClosureSpace::from_relation(ragged), std::invalid_argument);
}

TEST_CASE("sets from a different ground set are rejected") {
    const ClosureSpace space = ClosureSpace::from_graph(4, cycle_edges(4));
    REQUIRE_THROWS_AS(space.closure(PointSet(3)), std::invalid_argument);
    REQUIRE_THROWS_AS(space.interior(PointSet(5)), std::invalid_argument);
    REQUIRE_THROWS_AS(space.singleton_closure(4), std::out_of_range);
    REQUIRE_THROWS_AS(space.minimal_neighborhood(4), std::out_of_range);
}

TEST_CASE("randomized closure axioms") {
    const cech::PropertyResult result = cech::check_closure_axioms(20240817, 100);
    CAPTURE(result.failures);
    REQUIRE(result.ok());
    REQUIRE(result.checks >= 800);  // eight laws per case
}
