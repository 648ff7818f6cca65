/**
 * Finitely generated abelian groups and maps between them, in the
 * presentation-by-generators style the cohomology pipeline needs.
 *
 * A group is recorded in invariant-factor form: free rank plus a torsion
 * chain t1 | t2 | ... (each ti >= 2).  Its generator list is ordered free
 * generators first, then one generator per torsion factor; every morphism in
 * the library is an integer matrix acting on such generator lists, taken
 * modulo the relations of its target.
 *
 * The central computation is quotient_group(K, B): given generating sets of
 * two sublattices span(B) <= span(K) of some Z^m, produce span(K)/span(B) in
 * invariant-factor form.  Cohomology, sheaf-condition checks and flabbiness
 * all reduce to this plus kernel/solve from exact.hpp.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "exact.hpp"

namespace cech {

struct FgAbGroup {
    Eigen::Index free_rank = 0;
    std::vector<Int> torsion;  // invariant factors, each >= 2, t1 | t2 | ...

    FgAbGroup() = default;
    FgAbGroup(Eigen::Index rank, std::vector<Int> tors)
        : free_rank(rank), torsion(std::move(tors)) {
        if (free_rank < 0) throw std::invalid_argument("FgAbGroup: negative rank");
        for (std::size_t k = 0; k < torsion.size(); ++k) {
            if (torsion[k] < 2)
                throw std::invalid_argument("FgAbGroup: torsion coefficients must be >= 2");
            if (k > 0 && torsion[k] % torsion[k - 1] != 0)
                throw std::invalid_argument("FgAbGroup: torsion must form a divisibility chain");
        }
    }

    static FgAbGroup zero() { return FgAbGroup(); }
    static FgAbGroup free(Eigen::Index rank) { return FgAbGroup(rank, {}); }

    Eigen::Index generator_count() const {
        return free_rank + static_cast<Eigen::Index>(torsion.size());
    }
    bool trivial() const { return free_rank == 0 && torsion.empty(); }

    /**
     * Relation matrix on the generator list: one column t_k * e_{free_rank+k}
     * per torsion factor (free generators are unconstrained).
     */
    IntMatrix relations() const {
        IntMatrix r = IntMatrix::Zero(generator_count(), static_cast<Eigen::Index>(torsion.size()));
        for (std::size_t k = 0; k < torsion.size(); ++k)
            r(free_rank + static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = torsion[k];
        return r;
    }

    bool operator==(const FgAbGroup& other) const {
        return free_rank == other.free_rank && torsion == other.torsion;
    }
    bool operator!=(const FgAbGroup& other) const { return !(*this == other); }

    std::string to_string() const {
        if (trivial()) return "0";
        std::string out;
        if (free_rank == 1) out = "Z";
        else if (free_rank > 1) out = "Z^" + std::to_string(free_rank);
        for (const Int& t : torsion) {
            if (!out.empty()) out += " + ";
            out += "Z/" + t.str();
        }
        return out;
    }
};

/**
 * span(num) / span(den) inside Z^m, where the columns of den must lie in the
 * span of the columns of num.  Returns the quotient in invariant-factor form.
 */
inline FgAbGroup quotient_group(const IntMatrix& num, const IntMatrix& den) {
    if (num.rows() != den.rows())
        throw std::invalid_argument("quotient_group: ambient ranks differ");
    // Lattice basis of span(num): the first r columns of num * V are
    // left^{-1} * diag, i.e. a basis; r = rank.
    const SmithDecomposition sn = smith_normal_form(num);
    const Eigen::Index r = sn.rank;
    if (r == 0) {
        if (!is_zero(den))
            throw std::invalid_argument("quotient_group: denominator not inside numerator span");
        return FgAbGroup::zero();
    }
    const IntMatrix basis = (num * sn.right).leftCols(r);
    // Express den in that basis; columns outside the span are a caller error.
    const auto w = solve_integer(basis, den);
    if (!w)
        throw std::invalid_argument("quotient_group: denominator not inside numerator span");
    const SmithDecomposition sw = smith_normal_form(*w);
    std::vector<Int> torsion;
    for (const Int& d : sw.invariant_factors())
        if (d > 1) torsion.push_back(d);
    return FgAbGroup(r - sw.rank, std::move(torsion));
}

/** Z^gens modulo the column span of `relations`, in invariant-factor form. */
inline FgAbGroup presented_group(Eigen::Index gens, const IntMatrix& relations) {
    if (relations.rows() != gens)
        throw std::invalid_argument("presented_group: relation rows must equal generator count");
    return quotient_group(IntMatrix(IntMatrix::Identity(gens, gens)), relations);
}

/**
 * Is the generator matrix `map` a well-defined morphism
 * (source gens, rel_src) -> (target gens, rel_tgt)?  Exactly when it sends
 * source relations into the target relation span.
 */
inline bool hom_well_defined(const IntMatrix& map, const IntMatrix& rel_src,
                             const IntMatrix& rel_tgt) {
    return spans_contain(rel_tgt, IntMatrix(map * rel_src));
}

/**
 * Kernel of the morphism induced by `map` between presented groups:
 * { x : map x in span(rel_tgt) } / span(rel_src).
 */
inline FgAbGroup hom_kernel(const IntMatrix& map, const IntMatrix& rel_src,
                            const IntMatrix& rel_tgt) {
    // x-parts of a kernel basis of [map | rel_tgt] generate the preimage lattice.
    const IntMatrix k = kernel_basis(hstack(map, rel_tgt));
    const IntMatrix preimage = hstack(k.topRows(map.cols()), rel_src);
    return quotient_group(preimage, rel_src);
}

inline bool hom_injective(const IntMatrix& map, const IntMatrix& rel_src,
                          const IntMatrix& rel_tgt) {
    return hom_kernel(map, rel_src, rel_tgt).trivial();
}

/** Cokernel of the morphism: Z^target-gens / span([map | rel_tgt]). */
inline FgAbGroup hom_cokernel(const IntMatrix& map, const IntMatrix& rel_tgt) {
    return presented_group(map.rows(), hstack(map, rel_tgt));
}

inline bool hom_surjective(const IntMatrix& map, const IntMatrix& rel_tgt) {
    return hom_cokernel(map, rel_tgt).trivial();
}

/**
 * Do two generator matrices induce the same morphism into the target
 * presented group?  Exactly when their difference lands in the relation span.
 */
inline bool hom_equal(const IntMatrix& a, const IntMatrix& b, const IntMatrix& rel_tgt) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("hom_equal: shapes differ");
    return spans_contain(rel_tgt, IntMatrix(a - b));
}

}  // namespace cech
