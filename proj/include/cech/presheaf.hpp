/**
 * Presheaves of finitely generated abelian groups on the lattice L(X,c),
 * and the executable sheaf/flabby/stalk notions on top of them.
 *
 * A presheaf assigns a group F(U) to every lattice element and an integer
 * matrix rho[U->V] : F(U) -> F(V) (acting on generator columns) to every
 * comparable pair V <= U.  check_presheaf verifies the functor laws
 * *as morphisms*, i.e. modulo the relations of the target group.
 *
 * The sheaf condition is checked through the equalizer formulation: for an
 * i-cover { U_a } of U, with
 *
 *     f : F(U) -> prod_a F(U_a),          f = (rho[U->U_a])_a
 *     h : prod_a F(U_a) -> prod_{a<b} F(U_a & U_b),
 *         h((s_a)_a) = (rho[U_a -> U_a&U_b](s_a) - rho[U_b -> U_a&U_b](s_b))_{a<b}
 *
 * the two conditions are exactly (1) f injective and (2) ker h <= im f.
 * Only ordered pairs a<b are materialized: the diagonal blocks of the full
 * pairwise product are identically zero and the (b,a) blocks are negatives
 * of the (a,b) blocks, so ker h — the only thing conditions (1) and (2)
 * consume — is unchanged by the economy.
 *
 * check_sheaf enumerates, per lattice element U, all families of distinct
 * lattice elements contained in U, filters to i-covers of U, and tests the
 * equalizer on each.  The enumeration is capped per element; elements whose
 * candidate-family count exceeds the cap are reported as unchecked and the
 * verdict degrades to Indeterminate.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "abelian.hpp"
#include "closure_space.hpp"
#include "cover.hpp"
#include "exact.hpp"
#include "lattice.hpp"

namespace cech {

struct Presheaf {
    std::vector<FgAbGroup> values;  // one group per lattice element id

    /** rho[U->V] for comparable pairs V < U, keyed by (from, to). */
    std::unordered_map<std::uint64_t, IntMatrix> restrictions;

    static std::uint64_t key(std::size_t from, std::size_t to) {
        return (static_cast<std::uint64_t>(from) << 32) | static_cast<std::uint64_t>(to);
    }

    const FgAbGroup& value(std::size_t id) const { return values.at(id); }

    bool has_restriction(std::size_t from, std::size_t to) const {
        return from == to || restrictions.count(key(from, to)) > 0;
    }

    /** Generator matrix of rho[from->to]; the identity pair is synthesized. */
    IntMatrix restriction(std::size_t from, std::size_t to) const {
        if (from == to) {
            const auto it = restrictions.find(key(from, to));
            if (it != restrictions.end()) return it->second;
            const Eigen::Index g = values.at(from).generator_count();
            return IntMatrix::Identity(g, g);
        }
        const auto it = restrictions.find(key(from, to));
        if (it == restrictions.end())
            throw std::invalid_argument("presheaf: no restriction stored for pair (" +
                                        std::to_string(from) + " -> " + std::to_string(to) + ")");
        return it->second;
    }

    void set_restriction(std::size_t from, std::size_t to, IntMatrix m) {
        restrictions[key(from, to)] = std::move(m);
    }
};

/**
 * The constant presheaf with value g: F(U) = g for nonempty U, F(empty) = 0,
 * every restriction between nonempty elements the identity.
 */
inline Presheaf constant_presheaf(const Lattice& lat, const FgAbGroup& g) {
    Presheaf f;
    f.values.resize(lat.size());
    for (std::size_t id = 0; id < lat.size(); ++id)
        f.values[id] = lat.element(id).empty() ? FgAbGroup::zero() : g;
    const Eigen::Index gens = g.generator_count();
    for (std::size_t u = 0; u < lat.size(); ++u)
        for (std::size_t v = 0; v < lat.size(); ++v) {
            if (u == v || !lat.element(v).is_subset_of(lat.element(u))) continue;
            if (lat.element(v).empty())
                f.set_restriction(u, v, IntMatrix::Zero(0, f.values[u].generator_count()));
            else
                f.set_restriction(u, v, IntMatrix::Identity(gens, gens));
        }
    return f;
}

struct PresheafViolation {
    enum class Kind { BadValue, MissingRestriction, BadShape, IllDefined, Identity, Composition };
    Kind kind;
    std::vector<std::size_t> chain;  // the element ids involved (1, 2 or 3 of them)
    std::string description;
};

struct PresheafReport {
    std::vector<PresheafViolation> violations;
    bool ok() const { return violations.empty(); }
};

/**
 * Verify the presheaf laws on a lattice: a value for every element, a
 * restriction matrix of the right shape for every comparable pair, each a
 * well-defined morphism, identity on equal pairs, and functoriality
 * rho[V->W] rho[U->V] = rho[U->W] (as morphisms, i.e. modulo relations of
 * F(W)) on every chain W < V < U.
 */
inline PresheafReport check_presheaf(const Lattice& lat, const Presheaf& f) {
    PresheafReport report;
    auto flag = [&](PresheafViolation::Kind kind, std::vector<std::size_t> chain,
                    std::string text) {
        report.violations.push_back({kind, std::move(chain), std::move(text)});
    };
    if (f.values.size() != lat.size()) {
        flag(PresheafViolation::Kind::BadValue, {},
             "presheaf has " + std::to_string(f.values.size()) + " values for " +
                 std::to_string(lat.size()) + " lattice elements");
        return report;
    }

    const std::size_t n = lat.size();
    // Pair pass: existence, shape, well-definedness, identity.
    for (std::size_t u = 0; u < n; ++u) {
        if (f.has_restriction(u, u)) {
            const IntMatrix id_matrix = f.restriction(u, u);
            const Eigen::Index g = f.value(u).generator_count();
            if (id_matrix.rows() != g || id_matrix.cols() != g)
                flag(PresheafViolation::Kind::BadShape, {u}, "identity restriction has wrong shape");
            else if (!hom_equal(id_matrix, IntMatrix(IntMatrix::Identity(g, g)),
                                f.value(u).relations()))
                flag(PresheafViolation::Kind::Identity, {u},
                     "restriction on the trivial pair is not the identity morphism");
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (u == v || !lat.element(v).is_subset_of(lat.element(u))) continue;
            if (!f.has_restriction(u, v)) {
                flag(PresheafViolation::Kind::MissingRestriction, {u, v},
                     "no restriction for a comparable pair");
                continue;
            }
            const IntMatrix& rho = f.restriction(u, v);
            if (rho.rows() != f.value(v).generator_count() ||
                rho.cols() != f.value(u).generator_count()) {
                flag(PresheafViolation::Kind::BadShape, {u, v}, "restriction matrix has wrong shape");
                continue;
            }
            if (!hom_well_defined(rho, f.value(u).relations(), f.value(v).relations()))
                flag(PresheafViolation::Kind::IllDefined, {u, v},
                     "matrix does not send source relations into target relations");
        }
    }
    if (!report.ok()) return report;  // composition needs sane pairs

    // Chain pass: functoriality on strictly decreasing chains.
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            if (v == u || !lat.element(v).is_subset_of(lat.element(u))) continue;
            for (std::size_t w = 0; w < n; ++w) {
                if (w == v || w == u || !lat.element(w).is_subset_of(lat.element(v))) continue;
                const IntMatrix composite = f.restriction(v, w) * f.restriction(u, v);
                if (!hom_equal(composite, f.restriction(u, w), f.value(w).relations()))
                    flag(PresheafViolation::Kind::Composition, {u, v, w},
                         "restrictions do not compose along the chain");
            }
        }
    return report;
}

namespace detail {

/** Block layout of a product of presheaf values over a list of lattice ids. */
struct ProductLayout {
    std::vector<Eigen::Index> offsets;
    Eigen::Index total = 0;
    IntMatrix relations;  // block diagonal of the factors' relations

    ProductLayout(const Presheaf& f, const std::vector<std::size_t>& ids) {
        offsets.reserve(ids.size());
        Eigen::Index rel_cols = 0;
        for (std::size_t id : ids) {
            offsets.push_back(total);
            total += f.value(id).generator_count();
            rel_cols += static_cast<Eigen::Index>(f.value(id).torsion.size());
        }
        relations = IntMatrix::Zero(total, rel_cols);
        Eigen::Index col = 0;
        for (std::size_t k = 0; k < ids.size(); ++k) {
            const IntMatrix r = f.value(ids[k]).relations();
            relations.block(offsets[k], col, r.rows(), r.cols()) = r;
            col += r.cols();
        }
    }
};

}  // namespace detail

/**
 * Evaluate the two equalizer conditions for the family of lattice elements
 * `family` (ids, repeats allowed) over the base element u.  Returns
 * { condition1, condition2 }.  Does not test whether the family is an
 * i-cover — callers decide which families matter.
 */
inline std::pair<bool, bool> sheaf_conditions_on_family(const Lattice& lat, const Presheaf& f,
                                                        std::size_t u,
                                                        const std::vector<std::size_t>& family) {
    const detail::ProductLayout sections(f, family);
    const IntMatrix rel_u = f.value(u).relations();
    const Eigen::Index gens_u = f.value(u).generator_count();

    // f0 : F(U) -> prod_a F(U_a), stacked restrictions.
    IntMatrix f0 = IntMatrix::Zero(sections.total, gens_u);
    for (std::size_t a = 0; a < family.size(); ++a) {
        const IntMatrix rho = f.restriction(u, family[a]);
        f0.block(sections.offsets[a], 0, rho.rows(), rho.cols()) = rho;
    }
    const bool condition1 = hom_injective(f0, rel_u, sections.relations);

    // h : prod_a F(U_a) -> prod_{a<b} F(U_a & U_b); see the header comment
    // for why ordered pairs suffice.
    std::vector<std::size_t> overlaps;
    overlaps.reserve(family.size() * (family.size() - 1) / 2);
    for (std::size_t a = 0; a < family.size(); ++a)
        for (std::size_t b = a + 1; b < family.size(); ++b)
            overlaps.push_back(lat.meet(family[a], family[b]));
    const detail::ProductLayout pairs(f, overlaps);

    IntMatrix h = IntMatrix::Zero(pairs.total, sections.total);
    std::size_t block = 0;
    for (std::size_t a = 0; a < family.size(); ++a)
        for (std::size_t b = a + 1; b < family.size(); ++b, ++block) {
            const std::size_t w = overlaps[block];
            const Eigen::Index row = pairs.offsets[block];
            const IntMatrix rho_a = f.restriction(family[a], w);
            const IntMatrix rho_b = f.restriction(family[b], w);
            h.block(row, sections.offsets[a], rho_a.rows(), rho_a.cols()) += rho_a;
            h.block(row, sections.offsets[b], rho_b.rows(), rho_b.cols()) -= rho_b;
        }

    // ker h <= im f0, both taken modulo relations: the x-parts of a kernel
    // basis of [h | relations] generate all compatible families; each must be
    // expressible through [f0 | relations of the product].
    const IntMatrix compat = kernel_basis(hstack(h, pairs.relations)).topRows(sections.total);
    const bool condition2 = spans_contain(hstack(f0, sections.relations), compat);
    return {condition1, condition2};
}

struct SheafViolation {
    std::size_t element;               // the base U
    std::vector<std::size_t> family;   // witness i-cover (lattice ids)
    int condition;                     // 1 or 2
};

enum class SheafVerdict { Sheaf, NotSheaf, Indeterminate };

struct SheafReport {
    SheafVerdict verdict = SheafVerdict::Sheaf;
    std::vector<SheafViolation> violations;
    std::vector<std::size_t> unchecked;  // elements whose enumeration exceeded the cap
    std::size_t families_checked = 0;
};

/**
 * Check the sheaf condition over every lattice element.  Requires a presheaf
 * that already passes check_presheaf.  Per element U, at most `cover_cap`
 * candidate families are enumerated; beyond that U is reported unchecked and
 * the verdict becomes Indeterminate (unless a genuine violation was found,
 * which wins).
 */
inline SheafReport check_sheaf(const ClosureSpace& space, const Lattice& lat, const Presheaf& f,
                               std::size_t cover_cap = 4096) {
    SheafReport report;
    std::vector<PointSet> interior_of(lat.size(), PointSet(space.size()));
    for (std::size_t id = 0; id < lat.size(); ++id)
        interior_of[id] = space.interior(lat.element(id));
    for (std::size_t u = 0; u < lat.size(); ++u) {
        const std::vector<std::size_t> candidates = lat.elements_below(u);
        const std::size_t k = candidates.size();
        if (k >= 63 || (std::size_t(1) << k) > cover_cap) {
            report.unchecked.push_back(u);
            continue;
        }
        const PointSet& base = lat.element(u);
        const PointSet& base_interior = interior_of[u];
        for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
            // i-cover test straight on the ids: union and union of interiors.
            PointSet union_set(space.size());
            PointSet union_int(space.size());
            std::vector<std::size_t> family;
            for (std::size_t b = 0; b < k; ++b)
                if (mask & (std::size_t(1) << b)) {
                    family.push_back(candidates[b]);
                    union_set |= lat.element(candidates[b]);
                    union_int |= interior_of[candidates[b]];
                }
            if (union_set != base || union_int != base_interior) continue;
            ++report.families_checked;
            const auto [c1, c2] = sheaf_conditions_on_family(lat, f, u, family);
            if (!c1) report.violations.push_back({u, family, 1});
            if (!c2) report.violations.push_back({u, family, 2});
        }
    }
    if (!report.violations.empty()) report.verdict = SheafVerdict::NotSheaf;
    else if (!report.unchecked.empty()) report.verdict = SheafVerdict::Indeterminate;
    else report.verdict = SheafVerdict::Sheaf;
    return report;
}

struct FlabbyReport {
    std::vector<std::size_t> failing;  // elements U where F(X) -> F(U) is not onto
    bool ok() const { return failing.empty(); }
};

/** Is every restriction from the whole space surjective? */
inline FlabbyReport check_flabby(const Lattice& lat, const Presheaf& f) {
    FlabbyReport report;
    const std::size_t full = lat.full_id();
    for (std::size_t u = 0; u < lat.size(); ++u) {
        if (u == full) continue;
        if (!hom_surjective(f.restriction(full, u), f.value(u).relations()))
            report.failing.push_back(u);
    }
    return report;
}

/**
 * The stalk at x, with its two defining summands kept separate:
 * the value on the minimal neighborhood V_x and the value on the smallest
 * lattice element m_x containing x.
 */
struct Stalk {
    std::size_t neighborhood_id;  // id of V_x
    std::size_t minimal_id;       // id of m_x
    FgAbGroup neighborhood_part;  // F(V_x)
    FgAbGroup lattice_part;       // F(m_x)

    FgAbGroup direct_sum() const {
        // Concatenate invariant factors and re-canonicalize the chain.
        IntMatrix rel = IntMatrix::Zero(
            neighborhood_part.generator_count() + lattice_part.generator_count(),
            static_cast<Eigen::Index>(neighborhood_part.torsion.size() + lattice_part.torsion.size()));
        rel.block(0, 0, neighborhood_part.generator_count(),
                  static_cast<Eigen::Index>(neighborhood_part.torsion.size())) =
            neighborhood_part.relations();
        rel.block(neighborhood_part.generator_count(),
                  static_cast<Eigen::Index>(neighborhood_part.torsion.size()),
                  lattice_part.generator_count(),
                  static_cast<Eigen::Index>(lattice_part.torsion.size())) = lattice_part.relations();
        return presented_group(rel.rows(), rel);
    }
};

/**
 * Stalk of f at x.  In this finite setting V_x always exists and x always
 * lies in some lattice element (X itself), so both summands are defined; the
 * degenerate empty-space case yields the zero group twice.
 */
inline Stalk stalk(const ClosureSpace& space, const Lattice& lat, const Presheaf& f,
                   std::size_t x) {
    if (x >= space.size()) throw std::out_of_range("stalk: point out of range");
    const auto v_id = lat.find(space.minimal_neighborhood(x));
    if (!v_id)
        throw std::logic_error("stalk: minimal neighborhood missing from the lattice");
    const std::size_t m_id = lat.minimal_element_containing(x);
    return Stalk{*v_id, m_id, f.value(*v_id), f.value(m_id)};
}

}  // namespace cech
