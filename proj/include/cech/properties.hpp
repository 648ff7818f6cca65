/**
 * Seeded random generators and the randomized law suites: closure-operator
 * axioms with interior duality, and the cover operations that make i-covers
 * a basis for a Grothendieck topology (identity, restriction, composition,
 * intersection).
 *
 * The suites are shared by the unit tests, the command-line `axioms`
 * subcommand, and the acceptance gate.  Randomness is a hand-rolled
 * splitmix64 so identical seeds give identical cases on every platform and
 * standard library.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "closure_space.hpp"
#include "cover.hpp"
#include "point_set.hpp"

namespace cech {

/** splitmix64: tiny, fast, and identical everywhere. */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /** Uniform value in [0, bound); bound must be positive. */
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    /** True with probability num/den. */
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

private:
    std::uint64_t state_;
};

/** Random subset of {0..n-1}, each point kept with probability num/den. */
inline PointSet random_subset(Rng& rng, std::size_t n, std::uint64_t num = 1,
                              std::uint64_t den = 2) {
    PointSet s(n);
    for (std::size_t x = 0; x < n; ++x)
        if (rng.chance(num, den)) s.insert(x);
    return s;
}

/** Random closure space on 1..max_n points with a random singleton relation. */
inline ClosureSpace random_space(Rng& rng, std::size_t max_n) {
    const std::size_t n = 1 + rng.below(max_n);
    const std::uint64_t density = 1 + rng.below(5);  // extra-point probability density/10
    std::vector<PointSet> rows;
    rows.reserve(n);
    for (std::size_t y = 0; y < n; ++y) {
        PointSet row = random_subset(rng, n, density, 10);
        row.insert(y);
        rows.push_back(std::move(row));
    }
    return ClosureSpace::from_relation(std::move(rows));
}

/** Random undirected graph space on 1..max_n points. */
inline ClosureSpace random_graph_space(Rng& rng, std::size_t max_n) {
    const std::size_t n = 1 + rng.below(max_n);
    const std::uint64_t density = 1 + rng.below(4);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.chance(density, 10)) edges.push_back({i, j});
    return ClosureSpace::from_graph(n, edges);
}

/** Random cover of `base`: random subsets plus a filler so the union is exact. */
inline Cover random_cover_of(Rng& rng, const ClosureSpace& space, const PointSet& base,
                             std::size_t max_elements = 4) {
    const std::size_t n = space.size();
    std::vector<PointSet> elems;
    const std::size_t want = 1 + rng.below(max_elements);
    for (std::size_t k = 0; k + 1 < want; ++k) elems.push_back(random_subset(rng, n) & base);
    PointSet rest = base;
    for (const PointSet& e : elems) rest = rest - e;
    // final element: the uncovered remainder plus a random slice of the base
    elems.push_back(rest | (random_subset(rng, n) & base));
    return Cover(base, std::move(elems));
}

/**
 * Random i-cover of `base`.  For each x in i(base) the member
 * V_x | (random slice of base) has x in its ambient interior, which settles
 * the interior condition; remaining points are absorbed by filler members,
 * whose interiors stay inside i(base) by monotonicity.
 */
inline Cover random_i_cover(Rng& rng, const ClosureSpace& space, const PointSet& base,
                            std::size_t max_extra = 2) {
    const std::size_t n = space.size();
    std::vector<PointSet> elems;
    for (std::size_t x : space.interior(base).points())
        elems.push_back(space.minimal_neighborhood(x) | (random_subset(rng, n, 1, 3) & base));
    PointSet covered(n);
    for (const PointSet& e : elems) covered |= e;
    const PointSet rest = base - covered;
    if (!rest.empty()) elems.push_back(rest | (random_subset(rng, n, 1, 3) & base));
    for (std::size_t k = rng.below(max_extra + 1); k > 0; --k)
        elems.push_back(random_subset(rng, n, 1, 3) & base);
    return Cover(base, std::move(elems));
}

struct PropertyResult {
    std::size_t checks = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/**
 * Closure axioms and interior duality on random spaces: per case, one
 * random space and random subsets A and B, checking
 *   c(empty) = empty, A <= c(A), c(A|B) = c(A)|c(B),
 *   i(A) = X - c(X - A), i(X) = X, i(A&B) = i(A)&i(B), i(A) <= A,
 *   and x in i(A)  <=>  V_x <= A.
 */
inline PropertyResult check_closure_axioms(std::uint64_t seed, std::size_t cases,
                                           std::size_t max_n = 10) {
    Rng rng(seed);
    PropertyResult result;
    auto expect = [&](bool pass, std::size_t case_id, const std::string& what) {
        ++result.checks;
        if (!pass) result.failures.push_back("case " + std::to_string(case_id) + ": " + what);
    };
    for (std::size_t case_id = 0; case_id < cases; ++case_id) {
        const ClosureSpace space = random_space(rng, max_n);
        const std::size_t n = space.size();
        const PointSet a = random_subset(rng, n);
        const PointSet b = random_subset(rng, n);
        expect(space.closure(PointSet(n)).empty(), case_id, "c(empty) must be empty");
        expect(a.is_subset_of(space.closure(a)), case_id, "A must lie inside c(A)");
        expect(space.closure(a | b) == (space.closure(a) | space.closure(b)), case_id,
               "closure must be additive");
        expect(space.interior(a) == space.closure(a.complement()).complement(), case_id,
               "interior must be the dual of closure");
        expect(space.interior(space.universe()) == space.universe(), case_id,
               "i(X) must be X");
        expect(space.interior(a & b) == (space.interior(a) & space.interior(b)), case_id,
               "interior must be multiplicative");
        expect(space.interior(a).is_subset_of(a), case_id, "i(A) must lie inside A");
        const std::size_t x = rng.below(n);
        expect(space.interior(a).contains(x) == space.minimal_neighborhood(x).is_subset_of(a),
               case_id, "x in i(A) must be equivalent to V_x inside A");
    }
    return result;
}

/**
 * Basis laws for i-covers on random spaces.  Per case:
 *   identity:     { U } is an i-cover of U;
 *   restriction:  an i-cover of U restricted to V <= U is an i-cover of V;
 *   composition:  i-covers of the members of an i-cover of U compose to an
 *                 i-cover of U;
 *   intersection: two i-covers of U intersect to an i-cover of U,
 * which makes four checks per case.
 */
inline PropertyResult check_cover_axioms(std::uint64_t seed, std::size_t cases,
                                         std::size_t max_n = 8) {
    Rng rng(seed);
    PropertyResult result;
    auto expect = [&](bool pass, std::size_t case_id, const std::string& what) {
        ++result.checks;
        if (!pass) result.failures.push_back("case " + std::to_string(case_id) + ": " + what);
    };
    for (std::size_t case_id = 0; case_id < cases; ++case_id) {
        const ClosureSpace space = random_space(rng, max_n);
        const std::size_t n = space.size();
        const PointSet base = random_subset(rng, n, 2, 3);

        expect(is_i_cover(space, Cover(base, {base})), case_id,
               "the identity family must be an i-cover");

        const Cover cov = random_i_cover(rng, space, base);
        if (!is_i_cover(space, cov)) {
            // generator bug, not a library bug — but surface it loudly
            result.failures.push_back("case " + std::to_string(case_id) +
                                      ": generated family is not an i-cover");
            continue;
        }

        const PointSet v = random_subset(rng, n) & base;
        expect(is_i_cover(space, restrict_cover(space, cov, v)), case_id,
               "restriction to a subset must stay an i-cover");

        std::vector<Cover> inners;
        inners.reserve(cov.size());
        for (const PointSet& e : cov.elements) inners.push_back(random_i_cover(rng, space, e));
        expect(is_i_cover(space, compose_covers(space, cov, inners)), case_id,
               "composition of i-covers must be an i-cover");

        const Cover other = random_i_cover(rng, space, base);
        expect(is_i_cover(space, intersect_covers(cov, other)), case_id,
               "pairwise intersection of i-covers must be an i-cover");
    }
    return result;
}

}  // namespace cech
