/**
 * Cover machinery: i-cover recognition, the four cover operations
 * (identity, restriction, composition, intersection), the canonical cover
 * by minimal neighborhoods and its terminality, and the randomized law
 * suite.
 */

#include <catch2/catch_amalgamated.hpp>

#include <cech/cover.hpp>
#include <cech/properties.hpp>

#include <stdexcept>
#include <utility>
#include <vector>

using cech::CapExceeded;
using cech::ClosureSpace;
using cech::Cover;
using cech::PointSet;

namespace {

std::vector<std::pair<std::size_t, std::size_t>> cycle_edges(std::size_t m) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t v = 0; v < m; ++v) edges.emplace_back(v, (v + 1) % m);
    return edges;
}

const ClosureSpace& c8() {
    static const ClosureSpace space = ClosureSpace::from_graph(8, cycle_edges(8));
    return space;
}

}  // namespace

TEST_CASE("cover construction and validation") {
    const PointSet base = PointSet::of(4, {0, 1, 2});
    const Cover cov(base, {PointSet::of(4, {0, 1}), PointSet::of(4, {1, 2})}, {"a", "b"});
    REQUIRE(cov.size() == 2);
    REQUIRE(cov.label(0) == "a");
    REQUIRE(cov.union_of_elements() == base);
    REQUIRE(cech::is_cover(cov));

    // elements escaping the base or mismatched labels are rejected
    REQUIRE_THROWS_AS(Cover(base, {PointSet::of(4, {3})}), std::invalid_argument);
    REQUIRE_THROWS_AS(Cover(base, {PointSet::of(5, {0})}), std::invalid_argument);
    REQUIRE_THROWS_AS(Cover(base, {PointSet::of(4, {0})}, {"a", "b"}), std::invalid_argument);

    // default labels are positional
    const Cover unlabeled(base, {PointSet::of(4, {0, 1, 2})});
    REQUIRE(unlabeled.label(0) == "U0");
}

TEST_CASE("deduplication keeps first occurrences") {
    const PointSet base = PointSet::full(3);
    const Cover cov(base,
                    {PointSet::of(3, {0, 1}), PointSet::of(3, {1, 2}), PointSet::of(3, {0, 1})},
                    {"x", "y", "z"});
    const Cover dedup = cov.deduplicated();
    REQUIRE(dedup.size() == 2);
    REQUIRE(dedup.elements[0] == PointSet::of(3, {0, 1}));
    REQUIRE(dedup.labels == std::vector<std::string>{"x", "y"});
}

TEST_CASE("interior covers ask more than plain covers") {
    // path 0 - 1 - 2: interiors of the two edges are the endpoints only
    const ClosureSpace path = ClosureSpace::from_graph(3, {{0, 1}, {1, 2}});
    const Cover edges(path.universe(), {PointSet::of(3, {0, 1}), PointSet::of(3, {1, 2})});
    REQUIRE(cech::is_cover(edges));
    REQUIRE_FALSE(cech::is_interior_cover(path, edges));  // interiors {0} u {2} miss the middle

    const Cover with_all(path.universe(),
                         {PointSet::of(3, {0, 1}), PointSet::of(3, {1, 2}), PointSet::full(3)});
    REQUIRE(cech::is_interior_cover(path, with_all));

    // interior covers are stated for the full base only
    REQUIRE_THROWS_AS(
        cech::is_interior_cover(path, Cover(PointSet::of(3, {0, 1}), {PointSet::of(3, {0, 1})})),
        std::invalid_argument);
}

TEST_CASE("i-covers of arbitrary bases") {
    const PointSet arc = PointSet::of(8, {7, 0, 1});

    // the base itself: union matches and interiors reach i(base) = {0}
    REQUIRE(cech::is_i_cover(c8(), Cover(arc, {arc})));

    // splitting the arc into two edges loses the interior point
    const Cover halves(arc, {PointSet::of(8, {7, 0}), PointSet::of(8, {0, 1})});
    REQUIRE(cech::is_cover(halves));
    REQUIRE_FALSE(cech::is_i_cover(c8(), halves));

    // not even a cover: union falls short of the base
    REQUIRE_FALSE(cech::is_i_cover(c8(), Cover(arc, {PointSet::of(8, {7, 0})})));
}

TEST_CASE("canonical cover of the eight-cycle") {
    const Cover cov = cech::canonical_cover(c8());
    REQUIRE(cov.size() == 8);
    for (std::size_t x = 0; x < 8; ++x) {
        REQUIRE(cov.elements[x] == c8().minimal_neighborhood(x));
        REQUIRE(cov.labels[x] == "V" + std::to_string(x));
    }
    REQUIRE(cech::is_interior_cover(c8(), cov));

    // it refines the cover by 4-arcs (an interior cover)
    const Cover arcs(c8().universe(),
                     {PointSet::of(8, {7, 0, 1, 2}), PointSet::of(8, {1, 2, 3, 4}),
                      PointSet::of(8, {3, 4, 5, 6}), PointSet::of(8, {5, 6, 7, 0})});
    REQUIRE(cech::is_interior_cover(c8(), arcs));
    REQUIRE(cech::refines(cov, arcs));
    REQUIRE_FALSE(cech::refines(arcs, cov));
}

TEST_CASE("canonical cover with point labels") {
    const ClosureSpace complete = ClosureSpace::from_graph(3, {{0, 1}, {0, 2}, {1, 2}});
    const Cover cov = cech::canonical_cover(complete, {"a", "b", "c"});
    REQUIRE(cov.size() == 1);  // every V_x is the whole space
    REQUIRE(cov.labels == std::vector<std::string>{"V_a"});
    REQUIRE_THROWS_AS(cech::canonical_cover(complete, {"a", "b"}), std::invalid_argument);
}

TEST_CASE("restriction to a subset") {
    const PointSet arc = PointSet::of(8, {7, 0, 1});
    const Cover restricted = cech::restrict_cover(c8(), cech::canonical_cover(c8()), arc);
    REQUIRE(restricted.base == arc);
    REQUIRE(restricted.size() == 8);
    REQUIRE(restricted.elements[0] == (c8().minimal_neighborhood(0) & arc));
    REQUIRE(restricted.labels[3] == "V3");
    REQUIRE(cech::is_i_cover(c8(), restricted));

    REQUIRE_THROWS_AS(
        cech::restrict_cover(c8(), Cover(arc, {arc}), PointSet::of(8, {3})),
        std::invalid_argument);  // subset must lie inside the base
}

TEST_CASE("composition of i-covers") {
    const Cover outer(c8().universe(), {c8().universe()});
    const Cover inner = cech::canonical_cover(c8());
    const Cover composite = cech::compose_covers(c8(), outer, {inner});
    REQUIRE(composite.size() == 8);
    REQUIRE(composite.label(0) == "U0.V0");
    REQUIRE(cech::is_i_cover(c8(), composite));

    REQUIRE_THROWS_AS(cech::compose_covers(c8(), outer, {}), std::invalid_argument);
    const Cover wrong_base(PointSet::of(8, {0, 1}), {PointSet::of(8, {0, 1})});
    REQUIRE_THROWS_AS(cech::compose_covers(c8(), outer, {wrong_base}), std::invalid_argument);
}

TEST_CASE("intersection of interior covers") {
    const Cover canonical = cech::canonical_cover(c8());
    const Cover arcs(c8().universe(),
                     {PointSet::of(8, {7, 0, 1, 2}), PointSet::of(8, {1, 2, 3, 4}),
                      PointSet::of(8, {3, 4, 5, 6}), PointSet::of(8, {5, 6, 7, 0})},
                     {"A", "B", "C", "D"});
    const Cover meet = cech::intersect_covers(canonical, arcs);
    REQUIRE(meet.size() == 32);
    REQUIRE(meet.label(0) == "V0&A");
    REQUIRE(cech::is_interior_cover(c8(), meet));
    REQUIRE(cech::refines(meet, canonical));
    REQUIRE(cech::refines(meet, arcs));

    const Cover other_base(PointSet::of(8, {0}), {PointSet::of(8, {0})});
    REQUIRE_THROWS_AS(cech::intersect_covers(canonical, other_base), std::invalid_argument);
}

TEST_CASE("exhaustive interior covers of tiny spaces") {
    // two isolated points: members {0},{1},{0,1}; five families cover everything
    const ClosureSpace discrete2 = ClosureSpace::from_graph(2, {});
    REQUIRE(cech::enumerate_interior_covers(discrete2).size() == 5);

    // complete graph on three points: only { X } works
    const ClosureSpace complete = ClosureSpace::from_graph(3, {{0, 1}, {0, 2}, {1, 2}});
    REQUIRE(cech::enumerate_interior_covers(complete).size() == 1);

    // path 0-1-2: any family containing X, i.e. 4 of the 7 candidates' families
    const ClosureSpace path = ClosureSpace::from_graph(3, {{0, 1}, {1, 2}});
    const auto path_covers = cech::enumerate_interior_covers(path);
    REQUIRE(path_covers.size() == 4);

    // terminality: the canonical cover refines every interior cover
    for (const ClosureSpace* space : {&discrete2, &complete, &path}) {
        const Cover canonical = cech::canonical_cover(*space);
        for (const Cover& cov : cech::enumerate_interior_covers(*space))
            REQUIRE(cech::refines(canonical, cov));
    }
}

TEST_CASE("enumeration caps") {
    REQUIRE_THROWS_AS(cech::enumerate_interior_covers(c8(), 16), CapExceeded);
    const ClosureSpace big = ClosureSpace::from_graph(21, {});
    REQUIRE_THROWS_AS(cech::enumerate_interior_covers(big), CapExceeded);
}

TEST_CASE("randomized cover laws") {
    const cech::PropertyResult result = cech::check_cover_axioms(20240817, 150);
    CAPTURE(result.failures);
    REQUIRE(result.ok());
    REQUIRE(result.checks >= 600);  // four laws per case
}
