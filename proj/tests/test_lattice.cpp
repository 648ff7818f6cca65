/**
 * The value lattice of a closure space: all subsets with nonempty interior,
 * intersection-closed, plus the two extremes.  Frozen element lists for
 * hand-checkable spaces, a brute-force cross-check on random small spaces,
 * meets, minimal containing elements, and the element cap.
 */

#include <catch2/catch_amalgamated.hpp>

#include <cech/lattice.hpp>
#include <cech/properties.hpp>

#include <algorithm>
#include <utility>
#include <vector>

using cech::CapExceeded;
using cech::ClosureSpace;
using cech::Lattice;
using cech::PointSet;

namespace {

std::vector<std::pair<std::size_t, std::size_t>> cycle_edges(std::size_t m) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t v = 0; v < m; ++v) edges.emplace_back(v, (v + 1) % m);
    return edges;
}

/** All subsets of the expected lattice, assembled the slow obvious way. */
std::vector<PointSet> brute_force_lattice(const ClosureSpace& space) {
    const std::size_t n = space.size();
    std::vector<PointSet> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        PointSet s(n);
        for (std::size_t b = 0; b < n; ++b)
            if (mask & (std::size_t(1) << b)) s.insert(b);
        if (!space.interior(s).empty()) out.push_back(s);
    }
    out.push_back(PointSet(n));
    out.push_back(PointSet::full(n));
    // close under pairwise intersection until stable
    for (bool grew = true; grew;) {
        grew = false;
        const std::size_t before = out.size();
        for (std::size_t a = 0; a < before; ++a)
            for (std::size_t b = 0; b < a; ++b) {
                const PointSet m = out[a] & out[b];
                if (std::find(out.begin(), out.end(), m) == out.end()) {
                    out.push_back(m);
                    grew = true;
                }
            }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

TEST_CASE("discrete space: the full power set") {
    const Lattice lat(ClosureSpace::from_graph(3, {}));
    REQUIRE(lat.size() == 8);
    REQUIRE(lat.element(lat.empty_id()).empty());
    REQUIRE(lat.element(lat.full_id()).is_full());
    for (std::size_t id = 0; id < lat.size(); ++id)
        REQUIRE(lat.is_neighborhood(id) == !lat.element(id).empty());
}

TEST_CASE("complete graph: only the extremes") {
    const ClosureSpace complete = ClosureSpace::from_graph(3, {{0, 1}, {0, 2}, {1, 2}});
    const Lattice lat(complete);
    REQUIRE(lat.size() == 2);
    REQUIRE(lat.empty_id() == 0);
    REQUIRE(lat.full_id() == 1);
    REQUIRE_FALSE(lat.is_neighborhood(0));
    REQUIRE(lat.is_neighborhood(1));
    REQUIRE(lat.meet(1, 1) == 1);
    REQUIRE(lat.meet(0, 1) == 0);
}

TEST_CASE("path on three points: five elements in canonical order") {
    const ClosureSpace path = ClosureSpace::from_graph(3, {{0, 1}, {1, 2}});
    const Lattice lat(path);
    REQUIRE(lat.size() == 5);
    const std::vector<std::string> expected = {"000", "010", "011", "110", "111"};
    for (std::size_t id = 0; id < 5; ++id) REQUIRE(lat.element(id).bits() == expected[id]);

    // {1} = {0,1} & {1,2} enters through intersection closure but has empty interior
    REQUIRE_FALSE(lat.is_neighborhood(1));
    REQUIRE(lat.is_neighborhood(2));
    REQUIRE(lat.is_neighborhood(3));
    REQUIRE(lat.meet(3, 2) == 1);

    // the smallest element containing the midpoint is {1}, strictly below V_1 = X
    REQUIRE(lat.minimal_element_containing(1) == 1);
    REQUIRE(lat.minimal_element_containing(0) == 3);
    REQUIRE(lat.minimal_element_containing(2) == 2);

    REQUIRE(lat.elements_below(3) == std::vector<std::size_t>{0, 1, 3});
    REQUIRE(lat.elements_below(lat.full_id()).size() == 5);

    REQUIRE(lat.find(PointSet::from_bits("010")) == std::size_t{1});
    REQUIRE_FALSE(lat.find(PointSet::from_bits("100")).has_value());
}

TEST_CASE("eight-cycle: every subset appears") {
    const ClosureSpace space = ClosureSpace::from_graph(8, cycle_edges(8));
    const Lattice lat(space);
    REQUIRE(lat.size() == 256);
    for (std::size_t mask = 0; mask < 256; ++mask) {
        PointSet s(8);
        for (std::size_t b = 0; b < 8; ++b)
            if (mask & (std::size_t(1) << b)) s.insert(b);
        const auto id = lat.find(s);
        REQUIRE(id.has_value());
        // neighborhood flag agrees with the minimal-neighborhood criterion
        bool contains_some_v = false;
        for (std::size_t x = 0; x < 8 && !contains_some_v; ++x)
            contains_some_v = space.minimal_neighborhood(x).is_subset_of(s);
        REQUIRE(lat.is_neighborhood(*id) == contains_some_v);
    }
    // a sample meet: two overlapping arcs intersect in their common edge
    const auto a = lat.find(PointSet::of(8, {0, 1, 2}));
    const auto b = lat.find(PointSet::of(8, {1, 2, 3}));
    REQUIRE(lat.element(lat.meet(*a, *b)) == PointSet::of(8, {1, 2}));
}

TEST_CASE("agrees with the brute-force construction on random spaces") {
    cech::Rng rng(4242);
    for (int trial = 0; trial < 40; ++trial) {
        const ClosureSpace space = cech::random_space(rng, 4);
        const Lattice lat(space);
        REQUIRE(lat.elements() == brute_force_lattice(space));
        // meets stay inside and compute intersections
        for (std::size_t a = 0; a < lat.size(); ++a)
            for (std::size_t b = 0; b < lat.size(); ++b)
                REQUIRE(lat.element(lat.meet(a, b)) == (lat.element(a) & lat.element(b)));
    }
}

TEST_CASE("element cap") {
    const ClosureSpace space = ClosureSpace::from_graph(8, cycle_edges(8));
    REQUIRE_THROWS_AS(Lattice(space, 100), CapExceeded);
    REQUIRE_NOTHROW(Lattice(space, 256));
    REQUIRE_THROWS_AS(Lattice(ClosureSpace::from_graph(3, {}), 7), CapExceeded);
    REQUIRE_NOTHROW(Lattice(ClosureSpace::from_graph(3, {}), 8));
}
