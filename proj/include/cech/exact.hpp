/**
 * Exact linear algebra over the integers and over fields (Q and F_p).
 *
 * Everything homological in this library reduces to four primitives, all
 * implemented here with arbitrary-precision scalars (GMP via
 * boost::multiprecision) on dense Eigen matrices — no floating point
 * anywhere:
 *
 *   - smith_normal_form:  U * A * V = S with U, V unimodular and S diagonal,
 *     the diagonal entries forming a divisibility chain d1 | d2 | ...;
 *   - kernel_basis:       a lattice basis of { x : A x = 0 } (a saturated
 *     direct summand, read off the last columns of V);
 *   - solve_integer:      X with A X = B over Z, or nothing;
 *   - rank_over_q / rank_mod_p:  ranks over Q and F_p by Gaussian
 *     elimination in exact rational / modular arithmetic.
 */

#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cech {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

/** Horizontal concatenation [a | b]; both blocks may have zero columns. */
inline IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows())
        throw std::invalid_argument("hstack: row counts differ");
    IntMatrix out(a.rows(), a.cols() + b.cols());
    out.leftCols(a.cols()) = a;
    out.rightCols(b.cols()) = b;
    return out;
}

inline bool is_zero(const IntMatrix& a) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (a(i, j) != 0) return false;
    return true;
}

struct SmithDecomposition {
    IntMatrix left;   // unimodular, rows(a) x rows(a)
    IntMatrix diag;   // left * a * right, diagonal with divisibility chain
    IntMatrix right;  // unimodular, cols(a) x cols(a)
    Eigen::Index rank = 0;

    /** Nonzero diagonal entries d1 | d2 | ... | dr (all positive). */
    std::vector<Int> invariant_factors() const {
        std::vector<Int> out;
        out.reserve(static_cast<std::size_t>(rank));
        for (Eigen::Index t = 0; t < rank; ++t) out.push_back(diag(t, t));
        return out;
    }
};

/**
 * Smith normal form by alternating Euclidean row/column reduction.  The
 * divisibility chain is enforced in-loop: once a pivot clears its row and
 * column, any entry of the remaining block it fails to divide is folded into
 * the pivot row and the reduction re-runs, so the final diagonal entries are
 * the invariant factors themselves.
 */
inline SmithDecomposition smith_normal_form(IntMatrix a) {
    const Eigen::Index m = a.rows(), n = a.cols();
    SmithDecomposition out;
    out.left = IntMatrix::Identity(m, m);
    out.right = IntMatrix::Identity(n, n);

    Eigen::Index t = 0;
    for (; t < std::min(m, n); ++t) {
        // Pivot: entry of least absolute value in the remaining block
        // (a unit pivot ends the search early — the common case).
        Eigen::Index pi = -1, pj = -1;
        Int best = 0;
        for (Eigen::Index j = t; j < n && best != 1; ++j)
            for (Eigen::Index i = t; i < m; ++i) {
                const Int v = abs(a(i, j));
                if (v != 0 && (best == 0 || v < best)) {
                    best = v;
                    pi = i;
                    pj = j;
                    if (best == 1) break;
                }
            }
        if (pi < 0) break;  // remaining block is zero
        if (pi != t) { a.row(pi).swap(a.row(t)); out.left.row(pi).swap(out.left.row(t)); }
        if (pj != t) { a.col(pj).swap(a.col(t)); out.right.col(pj).swap(out.right.col(t)); }

        bool stable = false;
        while (!stable) {
            // Clear column t with Euclidean steps; a nonzero remainder is
            // swapped into the pivot slot, shrinking |pivot| each time.
            for (Eigen::Index i = t + 1; i < m; ++i) {
                while (a(i, t) != 0) {
                    const Int q = a(i, t) / a(t, t);
                    if (q != 0) {
                        a.row(i) -= q * a.row(t);
                        out.left.row(i) -= q * out.left.row(t);
                    }
                    if (a(i, t) != 0) {
                        a.row(i).swap(a.row(t));
                        out.left.row(i).swap(out.left.row(t));
                    }
                }
            }
            // Same for row t; column swaps here can repopulate column t.
            for (Eigen::Index j = t + 1; j < n; ++j) {
                while (a(t, j) != 0) {
                    const Int q = a(t, j) / a(t, t);
                    if (q != 0) {
                        a.col(j) -= q * a.col(t);
                        out.right.col(j) -= q * out.right.col(t);
                    }
                    if (a(t, j) != 0) {
                        a.col(j).swap(a.col(t));
                        out.right.col(j).swap(out.right.col(t));
                    }
                }
            }
            bool column_clear = true;
            for (Eigen::Index i = t + 1; i < m; ++i)
                if (a(i, t) != 0) { column_clear = false; break; }
            if (!column_clear) continue;

            stable = true;
            if (a(t, t) != 1 && a(t, t) != -1) {
                for (Eigen::Index i = t + 1; i < m && stable; ++i)
                    for (Eigen::Index j = t + 1; j < n && stable; ++j)
                        if (a(i, j) % a(t, t) != 0) {
                            a.row(t) += a.row(i);
                            out.left.row(t) += out.left.row(i);
                            stable = false;
                        }
            }
        }
    }

    for (Eigen::Index i = 0; i < std::min(m, n); ++i)
        if (a(i, i) < 0) {
            a.row(i) = -a.row(i);
            out.left.row(i) = -out.left.row(i);
        }
    out.rank = 0;
    for (Eigen::Index i = 0; i < std::min(m, n); ++i)
        if (a(i, i) != 0) ++out.rank;
    out.diag = std::move(a);
    return out;
}

/**
 * Basis of the kernel lattice { x in Z^n : A x = 0 } as matrix columns.
 * The basis spans a saturated sublattice (it extends to a basis of Z^n).
 */
inline IntMatrix kernel_basis(const IntMatrix& a) {
    const SmithDecomposition s = smith_normal_form(a);
    return s.right.rightCols(a.cols() - s.rank);
}

/** Solve A X = B over the integers; empty optional when no solution exists. */
inline std::optional<IntMatrix> solve_integer(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows())
        throw std::invalid_argument("solve_integer: row counts differ");
    const SmithDecomposition s = smith_normal_form(a);
    const IntMatrix c = s.left * b;
    IntMatrix y = IntMatrix::Zero(a.cols(), b.cols());
    for (Eigen::Index i = 0; i < s.rank; ++i)
        for (Eigen::Index j = 0; j < c.cols(); ++j) {
            if (c(i, j) % s.diag(i, i) != 0) return std::nullopt;
            y(i, j) = c(i, j) / s.diag(i, i);
        }
    for (Eigen::Index i = s.rank; i < c.rows(); ++i)
        for (Eigen::Index j = 0; j < c.cols(); ++j)
            if (c(i, j) != 0) return std::nullopt;
    return IntMatrix(s.right * y);
}

/** Does the column span of `a` contain every column of `b` (over Z)? */
inline bool spans_contain(const IntMatrix& a, const IntMatrix& b) {
    return solve_integer(a, b).has_value();
}

/** Rank over Q by Gaussian elimination in exact rational arithmetic. */
inline Eigen::Index rank_over_q(const IntMatrix& a) {
    RationalMatrix w(a.rows(), a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) w(i, j) = Rational(a(i, j));
    Eigen::Index rank = 0;
    for (Eigen::Index col = 0; col < w.cols() && rank < w.rows(); ++col) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = rank; i < w.rows(); ++i)
            if (w(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != rank) w.row(piv).swap(w.row(rank));
        for (Eigen::Index i = rank + 1; i < w.rows(); ++i) {
            if (w(i, col) == 0) continue;
            const Rational f = w(i, col) / w(rank, col);
            for (Eigen::Index j = col; j < w.cols(); ++j) w(i, j) -= f * w(rank, j);
        }
        ++rank;
    }
    return rank;
}

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

namespace detail {
inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t acc = 1 % p;
    base %= p;
    while (exp > 0) {
        if (exp & 1) acc = acc * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return acc;
}
}  // namespace detail

/** Rank over the prime field F_p (p < 2^31) by modular Gaussian elimination. */
inline Eigen::Index rank_mod_p(const IntMatrix& a, std::uint64_t p) {
    if (p >= (std::uint64_t(1) << 31) || !is_prime(p))
        throw std::invalid_argument("rank_mod_p: modulus must be a prime below 2^31");
    const Eigen::Index m = a.rows(), n = a.cols();
    std::vector<std::vector<std::uint64_t>> w(static_cast<std::size_t>(m),
                                              std::vector<std::uint64_t>(static_cast<std::size_t>(n)));
    const Int pz(p);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            Int r = a(i, j) % pz;
            if (r < 0) r += pz;
            w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                r.convert_to<std::uint64_t>();
        }
    Eigen::Index rank = 0;
    for (Eigen::Index col = 0; col < n && rank < m; ++col) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = rank; i < m; ++i)
            if (w[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(w[static_cast<std::size_t>(piv)], w[static_cast<std::size_t>(rank)]);
        auto& pivot_row = w[static_cast<std::size_t>(rank)];
        const std::uint64_t inv =
            detail::pow_mod(pivot_row[static_cast<std::size_t>(col)], p - 2, p);
        for (Eigen::Index i = rank + 1; i < m; ++i) {
            auto& row = w[static_cast<std::size_t>(i)];
            const std::uint64_t lead = row[static_cast<std::size_t>(col)];
            if (lead == 0) continue;
            const std::uint64_t f = lead * inv % p;
            for (Eigen::Index j = col; j < n; ++j) {
                const std::size_t js = static_cast<std::size_t>(j);
                row[js] = (row[js] + (p - f) * pivot_row[js]) % p;
            }
        }
        ++rank;
    }
    return rank;
}

/** Exact determinant of a square integer matrix (fraction-free elimination). */
inline Int determinant(IntMatrix a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix not square");
    const Eigen::Index n = a.rows();
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            Eigen::Index piv = -1;
            for (Eigen::Index i = k + 1; i < n; ++i)
                if (a(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            a.row(piv).swap(a.row(k));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i) {
            for (Eigen::Index j = k + 1; j < n; ++j)
                a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
}

}  // namespace cech
