/**
 * Covers of subsets of a closure space, and the operations that make the
 * interior covers of all subsets a basis for a Grothendieck topology.
 *
 * A cover of a base set U is any finite family of subsets of U whose union
 * is U.  An i-cover additionally has the union of the *ambient* interiors
 * of its members equal to the ambient interior of U:
 *
 *     union_a U_a = U   and   union_a i(U_a) = i(U).
 *
 * When U is the whole space this is the usual notion of interior cover;
 * when i(U) is empty every cover of U qualifies.  The three closure
 * operations below — restriction to a subset, composition with families of
 * covers of the members, and pairwise intersection — preserve i-covers, and
 * the tests exercise exactly those closure properties.
 *
 * The canonical cover { V_x : x in X } by minimal neighborhoods refines
 * every interior cover of the space: if union_a i(U_a) = X, each x lies in
 * some i(U_a), which by minimality means V_x is contained in U_a.  It is
 * therefore terminal in the refinement preorder, which is what makes the
 * Cech cohomology of the space computable from a single cover.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "closure_space.hpp"
#include "point_set.hpp"

namespace cech {

/** Thrown when an enumeration would exceed its configured cap. */
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Cover {
    PointSet base;
    std::vector<PointSet> elements;
    std::vector<std::string> labels;  // empty, or one label per element

    Cover(PointSet base_, std::vector<PointSet> elements_, std::vector<std::string> labels_ = {})
        : base(std::move(base_)), elements(std::move(elements_)), labels(std::move(labels_)) {
        for (std::size_t k = 0; k < elements.size(); ++k) {
            if (elements[k].universe_size() != base.universe_size())
                throw std::invalid_argument("Cover: element " + std::to_string(k) +
                                            " lives in a different ground set");
            if (!elements[k].is_subset_of(base))
                throw std::invalid_argument("Cover: element " + std::to_string(k) +
                                            " is not contained in the base");
        }
        if (!labels.empty() && labels.size() != elements.size())
            throw std::invalid_argument("Cover: label count does not match element count");
    }

    std::size_t size() const { return elements.size(); }

    PointSet union_of_elements() const {
        PointSet u(base.universe_size());
        for (const PointSet& e : elements) u |= e;
        return u;
    }

    std::string label(std::size_t k) const {
        return labels.empty() ? "U" + std::to_string(k) : labels[k];
    }

    /** Drop exact duplicates, keeping the first occurrence of each element. */
    Cover deduplicated() const {
        std::vector<PointSet> out;
        std::vector<std::string> out_labels;
        std::unordered_set<PointSet, PointSetHash> seen;
        for (std::size_t k = 0; k < elements.size(); ++k)
            if (seen.insert(elements[k]).second) {
                out.push_back(elements[k]);
                if (!labels.empty()) out_labels.push_back(labels[k]);
            }
        return Cover(base, std::move(out), std::move(out_labels));
    }
};

namespace detail {
inline void require_same_space(const ClosureSpace& space, const Cover& cov) {
    if (cov.base.universe_size() != space.size())
        throw std::invalid_argument("cover does not live in the given space");
}
}  // namespace detail

/** Union of the members equals the base. */
inline bool is_cover(const Cover& cov) { return cov.union_of_elements() == cov.base; }

/**
 * Interior cover of the whole space: base must be X, and the interiors of
 * the members must cover X.
 */
inline bool is_interior_cover(const ClosureSpace& space, const Cover& cov) {
    detail::require_same_space(space, cov);
    if (!cov.base.is_full() && space.size() > 0)
        throw std::invalid_argument("is_interior_cover: base must be the whole space");
    if (!is_cover(cov)) return false;
    PointSet interiors(space.size());
    for (const PointSet& e : cov.elements) interiors |= space.interior(e);
    return interiors == cov.base;
}

/** i-cover of an arbitrary base: union = base and union of ambient interiors = i(base). */
inline bool is_i_cover(const ClosureSpace& space, const Cover& cov) {
    detail::require_same_space(space, cov);
    if (!is_cover(cov)) return false;
    PointSet interiors(space.size());
    for (const PointSet& e : cov.elements) interiors |= space.interior(e);
    return interiors == space.interior(cov.base);
}

/**
 * Pairwise intersections { a & b } of two covers of the same base; preserves
 * i-covers (asserted in the tests for both directions of the refinement).
 */
inline Cover intersect_covers(const Cover& lhs, const Cover& rhs) {
    if (lhs.base != rhs.base)
        throw std::invalid_argument("intersect_covers: bases differ");
    std::vector<PointSet> elems;
    std::vector<std::string> labels;
    const bool with_labels = !lhs.labels.empty() && !rhs.labels.empty();
    elems.reserve(lhs.size() * rhs.size());
    for (std::size_t a = 0; a < lhs.size(); ++a)
        for (std::size_t b = 0; b < rhs.size(); ++b) {
            elems.push_back(lhs.elements[a] & rhs.elements[b]);
            if (with_labels) labels.push_back(lhs.label(a) + "&" + rhs.label(b));
        }
    return Cover(lhs.base, std::move(elems), std::move(labels));
}

/** Does every member of `fine` sit inside some member of `coarse` (same base)? */
inline bool refines(const Cover& fine, const Cover& coarse) {
    if (fine.base != coarse.base)
        throw std::invalid_argument("refines: bases differ");
    for (const PointSet& e : fine.elements) {
        bool inside = false;
        for (const PointSet& c : coarse.elements)
            if (e.is_subset_of(c)) { inside = true; break; }
        if (!inside) return false;
    }
    return true;
}

/**
 * The deduplicated cover { V_x : x in X } by minimal neighborhoods, labelled
 * by the first point that produces each element.  Refines every interior
 * cover of the space.
 */
inline Cover canonical_cover(const ClosureSpace& space) {
    const std::size_t n = space.size();
    std::vector<PointSet> elems;
    std::vector<std::string> labels;
    std::unordered_set<PointSet, PointSetHash> seen;
    for (std::size_t x = 0; x < n; ++x) {
        const PointSet& v = space.minimal_neighborhood(x);
        if (seen.insert(v).second) {
            elems.push_back(v);
            labels.push_back("V" + std::to_string(x));
        }
    }
    return Cover(space.universe(), std::move(elems), std::move(labels));
}

/** Canonical cover with elements named after user-supplied point labels. */
inline Cover canonical_cover(const ClosureSpace& space,
                             const std::vector<std::string>& point_labels) {
    if (point_labels.size() != space.size())
        throw std::invalid_argument("canonical_cover: need one label per point");
    Cover cov = canonical_cover(space);
    std::vector<std::string> labels;
    labels.reserve(cov.size());
    for (const PointSet& e : cov.elements) {
        for (std::size_t x = 0; x < space.size(); ++x)
            if (space.minimal_neighborhood(x) == e) {
                labels.push_back("V_" + point_labels[x]);
                break;
            }
    }
    cov.labels = std::move(labels);
    return cov;
}

/**
 * Restriction of a cover of U to a subset V: the family { U_a & V }.  When
 * the input is an i-cover of U, the output is an i-cover of V (a theorem;
 * asserted here rather than assumed).
 */
inline Cover restrict_cover(const ClosureSpace& space, const Cover& cov, const PointSet& v) {
    detail::require_same_space(space, cov);
    if (!v.is_subset_of(cov.base))
        throw std::invalid_argument("restrict_cover: subset must lie inside the base");
    std::vector<PointSet> elems;
    elems.reserve(cov.size());
    for (const PointSet& e : cov.elements) elems.push_back(e & v);
    Cover out(v, std::move(elems), cov.labels);
    if (is_i_cover(space, cov) && !is_i_cover(space, out))
        throw std::logic_error("restrict_cover: restriction of an i-cover failed to be one");
    return out;
}

/**
 * Composition: given an i-cover { U_a } of U and an i-cover of each U_a,
 * the union of the inner families is an i-cover of U (a theorem; asserted).
 * inners[a] must have base U_a.
 */
inline Cover compose_covers(const ClosureSpace& space, const Cover& outer,
                            const std::vector<Cover>& inners) {
    detail::require_same_space(space, outer);
    if (inners.size() != outer.size())
        throw std::invalid_argument("compose_covers: need one inner cover per outer element");
    std::vector<PointSet> elems;
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < inners.size(); ++a) {
        if (inners[a].base != outer.elements[a])
            throw std::invalid_argument("compose_covers: inner cover " + std::to_string(a) +
                                        " has the wrong base");
        for (std::size_t k = 0; k < inners[a].size(); ++k) {
            elems.push_back(inners[a].elements[k]);
            labels.push_back(outer.label(a) + "." + inners[a].label(k));
        }
    }
    Cover out(outer.base, std::move(elems), std::move(labels));
    bool all_i_covers = is_i_cover(space, outer);
    for (std::size_t a = 0; a < inners.size() && all_i_covers; ++a)
        all_i_covers = is_i_cover(space, inners[a]);
    if (all_i_covers && !is_i_cover(space, out))
        throw std::logic_error("compose_covers: composite of i-covers failed to be one");
    return out;
}

/**
 * Exhaustively list every interior cover of a small space whose members are
 * distinct.  Members are drawn from the subsets of X with nonempty interior
 * (others cannot contribute), so the search space is 2^|candidates| families;
 * `max_families` caps that count and CapExceeded is thrown beyond it.  Meant
 * for tests and cross-checks, not production-sized spaces.
 */
inline std::vector<Cover> enumerate_interior_covers(const ClosureSpace& space,
                                                    std::size_t max_families = 1000000) {
    const std::size_t n = space.size();
    if (n > 20) throw CapExceeded("enumerate_interior_covers: space too large");
    // Candidate members: subsets with nonempty interior.
    std::vector<PointSet> candidates;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        PointSet s(n);
        for (std::size_t b = 0; b < n; ++b)
            if (mask & (std::size_t(1) << b)) s.insert(b);
        if (!space.interior(s).empty()) candidates.push_back(s);
    }
    const std::size_t k = candidates.size();
    if (k >= 63 || (std::size_t(1) << k) > max_families)
        throw CapExceeded("enumerate_interior_covers: " + std::to_string(k) +
                          " candidate members exceed the family cap of " +
                          std::to_string(max_families));
    std::vector<Cover> out;
    for (std::size_t mask = 1; mask < (std::size_t(1) << k); ++mask) {
        std::vector<PointSet> elems;
        for (std::size_t b = 0; b < k; ++b)
            if (mask & (std::size_t(1) << b)) elems.push_back(candidates[b]);
        Cover cov(space.universe(), std::move(elems));
        if (is_interior_cover(space, cov)) out.push_back(std::move(cov));
    }
    return out;
}

}  // namespace cech
