/**
 * Nerve of a cover: the abstract simplicial complex whose q-simplices are
 * the (q+1)-element index sets { a0 < ... < aq } with nonempty intersection
 * U_{a0} & ... & U_{aq}.
 *
 * Faces are enumerated by depth-first extension of increasing tuples,
 * pruning on empty running intersections (any subset of a face is again a
 * face, so pruning is sound).  The cover must be free of duplicate elements;
 * duplicates would manufacture artificial simplices between copies.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "cover.hpp"
#include "point_set.hpp"

namespace cech {

struct SimplicialComplex {
    std::size_t vertex_count = 0;        // number of cover elements
    std::vector<std::string> labels;     // one per potential vertex
    /** faces[q] lists the q-simplices as strictly increasing index tuples. */
    std::vector<std::vector<std::vector<std::size_t>>> faces;

    std::size_t face_count(std::size_t q) const {
        return q < faces.size() ? faces[q].size() : 0;
    }

    bool operator==(const SimplicialComplex& other) const {
        return vertex_count == other.vertex_count && labels == other.labels &&
               faces == other.faces;
    }
};

/** Nerve of `cov` up to simplex dimension q_max (tuples of q_max+1 elements). */
inline SimplicialComplex nerve(const Cover& cov, std::size_t q_max) {
    {
        std::unordered_set<PointSet, PointSetHash> seen;
        for (const PointSet& e : cov.elements)
            if (!seen.insert(e).second)
                throw std::invalid_argument("nerve: cover has duplicate elements");
    }
    SimplicialComplex out;
    out.vertex_count = cov.size();
    out.labels.reserve(cov.size());
    for (std::size_t k = 0; k < cov.size(); ++k) out.labels.push_back(cov.label(k));
    out.faces.assign(q_max + 1, {});

    std::vector<std::size_t> tuple;
    auto extend = [&](auto&& self, const PointSet& intersection, std::size_t next) -> void {
        if (!tuple.empty()) out.faces[tuple.size() - 1].push_back(tuple);
        if (tuple.size() == q_max + 1) return;
        for (std::size_t a = next; a < cov.size(); ++a) {
            const PointSet deeper = intersection & cov.elements[a];
            if (deeper.empty()) continue;
            tuple.push_back(a);
            self(self, deeper, a + 1);
            tuple.pop_back();
        }
    };
    PointSet everything = cov.base;  // intersection over the empty tuple
    extend(extend, everything, 0);
    return out;
}

}  // namespace cech
