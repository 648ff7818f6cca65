/**
 * The lattice L(X,c) on which presheaves are defined: all subsets of X with
 * nonempty interior, closed under pairwise intersection, together with the
 * empty set and X itself.
 *
 * A subset U has nonempty interior exactly when it contains some minimal
 * neighborhood V_x, so the neighborhood part of the lattice is the upward
 * closure of { V_x : x in X }.  It is generated breadth-first from those
 * seeds (add one point at a time), then closed under intersections with a
 * worklist; both phases respect a configurable element cap so pathological
 * spaces fail fast with CapExceeded instead of exhausting memory.
 *
 * Elements are sorted canonically (by size, then lexicographically by
 * bit-string), so ids are deterministic across runs; the meet table is
 * materialized as ids since every pairwise intersection is again an element.
 */

#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "closure_space.hpp"
#include "cover.hpp"
#include "point_set.hpp"

namespace cech {

class Lattice {
public:
    Lattice(const ClosureSpace& space, std::size_t cap = 1024) {
        const std::size_t n = space.size();
        std::unordered_map<PointSet, std::size_t, PointSetHash> seen;
        std::deque<PointSet> queue;
        auto admit = [&](const PointSet& s) {
            if (seen.emplace(s, 0).second) {
                if (seen.size() > cap)
                    throw CapExceeded("lattice would exceed the element cap of " +
                                      std::to_string(cap));
                queue.push_back(s);
            }
        };
        // Upward closure of the minimal neighborhoods = all sets with
        // nonempty interior.
        for (std::size_t x = 0; x < n; ++x) admit(space.minimal_neighborhood(x));
        while (!queue.empty()) {
            PointSet s = queue.front();
            queue.pop_front();
            for (std::size_t p = 0; p < n; ++p)
                if (!s.contains(p)) {
                    PointSet bigger = s;
                    bigger.insert(p);
                    admit(bigger);
                }
        }
        // Adjoin the required extremes, then close under intersection.
        admit(PointSet(n));
        admit(PointSet::full(n));
        std::vector<PointSet> work;
        work.reserve(seen.size());
        for (const auto& [s, unused] : seen) work.push_back(s);
        for (std::size_t a = 0; a < work.size(); ++a)
            for (std::size_t b = 0; b < a; ++b) {
                PointSet meet_ab = work[a] & work[b];
                if (seen.emplace(meet_ab, 0).second) {
                    if (seen.size() > cap)
                        throw CapExceeded("lattice would exceed the element cap of " +
                                          std::to_string(cap));
                    work.push_back(std::move(meet_ab));
                }
            }

        elements_ = std::move(work);
        std::sort(elements_.begin(), elements_.end());
        index_.reserve(elements_.size());
        for (std::size_t id = 0; id < elements_.size(); ++id) index_[elements_[id]] = id;
        empty_id_ = index_.at(PointSet(n));
        full_id_ = index_.at(PointSet::full(n));

        neighborhood_.resize(elements_.size());
        for (std::size_t id = 0; id < elements_.size(); ++id)
            neighborhood_[id] = !space.interior(elements_[id]).empty();

        meet_.assign(elements_.size() * elements_.size(), 0);
        for (std::size_t a = 0; a < elements_.size(); ++a) {
            meet_at(a, a) = a;
            for (std::size_t b = 0; b < a; ++b) {
                const std::size_t m = index_.at(elements_[a] & elements_[b]);
                meet_at(a, b) = m;
                meet_at(b, a) = m;
            }
        }
    }

    std::size_t size() const { return elements_.size(); }
    const PointSet& element(std::size_t id) const { return elements_.at(id); }
    const std::vector<PointSet>& elements() const { return elements_; }

    std::size_t empty_id() const { return empty_id_; }
    std::size_t full_id() const { return full_id_; }

    /** Does this element have nonempty interior (is it a neighborhood of something)? */
    bool is_neighborhood(std::size_t id) const { return neighborhood_.at(id); }

    /** Id of the intersection of two elements (always an element). */
    std::size_t meet(std::size_t a, std::size_t b) const {
        if (a >= size() || b >= size()) throw std::out_of_range("Lattice::meet: bad id");
        return meet_[a * size() + b];
    }

    std::optional<std::size_t> find(const PointSet& s) const {
        const auto it = index_.find(s);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /** Id of the smallest element containing point x (meet of all elements containing x). */
    std::size_t minimal_element_containing(std::size_t x) const {
        std::optional<std::size_t> acc;
        for (std::size_t id = 0; id < size(); ++id)
            if (elements_[id].contains(x)) acc = acc ? meet(*acc, id) : id;
        if (!acc) throw std::logic_error("minimal_element_containing: point in no element");
        return *acc;
    }

    /** Ids of all elements contained in the given element. */
    std::vector<std::size_t> elements_below(std::size_t id) const {
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < size(); ++k)
            if (elements_[k].is_subset_of(elements_.at(id))) out.push_back(k);
        return out;
    }

private:
    std::size_t& meet_at(std::size_t a, std::size_t b) { return meet_[a * elements_.size() + b]; }

    std::vector<PointSet> elements_;
    std::unordered_map<PointSet, std::size_t, PointSetHash> index_;
    std::vector<bool> neighborhood_;
    std::vector<std::size_t> meet_;
    std::size_t empty_id_ = 0, full_id_ = 0;
};

}  // namespace cech
