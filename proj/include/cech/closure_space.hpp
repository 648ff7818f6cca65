/**
 * Finite closure spaces.
 *
 * A closure operator c on a finite set X assigns to every subset A a set
 * c(A) with
 *
 *     c(emptyset) = emptyset,    A subset of c(A),    c(A u B) = c(A) u c(B).
 *
 * Additivity means c is determined by its values on singletons, so a finite
 * space is stored as n point sets: row y holds c({y}).  Unlike a topology,
 * c need not be idempotent; spaces where c(c(A)) = c(A) for every A are
 * called topological here.
 *
 * The interior operator is defined by duality, i(A) = X \ c(X \ A), and the
 * minimal neighborhood of a point x is V_x = { y : x in c({y}) } — the
 * column of the singleton-closure relation.  V_x is the smallest set with x
 * in its interior: x in i(U) if and only if V_x is contained in U.  That
 * equivalence is the workhorse of the whole library and is checked
 * property-style in the tests rather than assumed.
 */

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "point_set.hpp"

namespace cech {

enum class Metric { Euclidean, Chebyshev, Manhattan };

class ClosureSpace {
public:
    /**
     * Space of a finite simple graph: c({v}) = {v} together with the
     * out-neighbors of v.  Undirected edges should be listed once and are
     * added in both directions; pass directed = true to keep them one-way.
     */
    static ClosureSpace from_graph(std::size_t n,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                   bool directed = false) {
        std::vector<PointSet> rows(n, PointSet(n));
        for (std::size_t v = 0; v < n; ++v) rows[v].insert(v);
        for (const auto& [u, v] : edges) {
            if (u >= n || v >= n)
                throw std::invalid_argument("from_graph: edge (" + std::to_string(u) + "," +
                                            std::to_string(v) + ") has an endpoint outside 0.." +
                                            std::to_string(n == 0 ? 0 : n - 1));
            rows[u].insert(v);
            if (!directed) rows[v].insert(u);
        }
        return ClosureSpace(std::move(rows));
    }

    /**
     * Ball closure of a finite metric sample at scale r >= 0:
     * c({y}) = { x : d(x, y) <= r }.  Rows of `points` are the points.
     */
    static ClosureSpace from_metric(const Eigen::MatrixXd& points, Metric metric, double r) {
        if (!(r >= 0.0))  // also rejects NaN
            throw std::invalid_argument("from_metric: radius must be a number >= 0");
        if (!points.allFinite())
            throw std::invalid_argument("from_metric: coordinates must be finite");
        const std::size_t n = static_cast<std::size_t>(points.rows());
        std::vector<PointSet> rows(n, PointSet(n));
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t x = 0; x < n; ++x)
                if (distance(points, x, y, metric) <= r) rows[y].insert(x);
        return ClosureSpace(std::move(rows));
    }

    /**
     * Arbitrary singleton-closure relation: rows[y] = c({y}).  Each row must
     * contain its own index (reflexivity), which is exactly A subset of c(A)
     * on singletons.
     */
    static ClosureSpace from_relation(std::vector<PointSet> rows) {
        return ClosureSpace(std::move(rows));
    }

    std::size_t size() const { return rows_.size(); }

    PointSet universe() const { return PointSet::full(size()); }

    const PointSet& singleton_closure(std::size_t y) const {
        if (y >= size()) throw std::out_of_range("singleton_closure: point out of range");
        return rows_[y];
    }

    /** c(A), computed additively as the union of singleton closures. */
    PointSet closure(const PointSet& a) const {
        check_universe(a);
        PointSet out(size());
        for (std::size_t y : a.points()) out |= rows_[y];
        return out;
    }

    /** i(A) = X \ c(X \ A). */
    PointSet interior(const PointSet& a) const {
        check_universe(a);
        return closure(a.complement()).complement();
    }

    /**
     * Minimal neighborhood V_x = { y : x in c({y}) }: the smallest set
     * whose interior contains x.
     */
    const PointSet& minimal_neighborhood(std::size_t x) const {
        if (x >= size()) throw std::out_of_range("minimal_neighborhood: point out of range");
        return columns_[x];
    }

    /** True when the closure is idempotent on every singleton (hence on every set). */
    bool topological() const {
        for (std::size_t y = 0; y < size(); ++y)
            if (closure(rows_[y]) != rows_[y]) return false;
        return true;
    }

    bool operator==(const ClosureSpace& other) const { return rows_ == other.rows_; }

private:
    explicit ClosureSpace(std::vector<PointSet> rows) : rows_(std::move(rows)) {
        const std::size_t n = rows_.size();
        for (std::size_t y = 0; y < n; ++y) {
            if (rows_[y].universe_size() != n)
                throw std::invalid_argument("closure relation: row " + std::to_string(y) +
                                            " has wrong ground-set size");
            if (!rows_[y].contains(y))
                throw std::invalid_argument("closure relation: point " + std::to_string(y) +
                                            " missing from its own closure");
        }
        columns_.assign(n, PointSet(n));
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t x : rows_[y].points()) columns_[x].insert(y);
    }

    static double distance(const Eigen::MatrixXd& pts, std::size_t x, std::size_t y,
                           Metric metric) {
        if (pts.cols() == 0) return 0.0;  // zero-dimensional sample: everything coincides
        const auto diff = pts.row(static_cast<Eigen::Index>(x)) - pts.row(static_cast<Eigen::Index>(y));
        switch (metric) {
            case Metric::Euclidean: return diff.norm();
            case Metric::Chebyshev: return diff.cwiseAbs().maxCoeff();
            case Metric::Manhattan: return diff.cwiseAbs().sum();
        }
        throw std::logic_error("unreachable metric kind");
    }

    void check_universe(const PointSet& a) const {
        if (a.universe_size() != size())
            throw std::invalid_argument("set lives in a ground set of size " +
                                        std::to_string(a.universe_size()) + ", space has " +
                                        std::to_string(size()) + " points");
    }

    std::vector<PointSet> rows_;     // rows_[y] = c({y})
    std::vector<PointSet> columns_;  // columns_[x] = V_x
};

}  // namespace cech
