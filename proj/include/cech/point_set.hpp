/**
 * Subsets of a fixed finite ground set {0, ..., n-1}, with constant-time
 * boolean algebra on top of a packed bitset.
 *
 * Every object in this library (closure relations, covers, lattice elements)
 * is built from these sets, so the interface stays deliberately small:
 * membership, the lattice operations, subset order, and a canonical
 * bit-string form "0101..." in which character k (counting from the left)
 * is '1' exactly when point k belongs to the set.
 */

#pragma once

#include <boost/dynamic_bitset.hpp>
#include <boost/functional/hash.hpp>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace cech {

class PointSet {
public:
    PointSet() = default;

    /** Empty subset of a ground set with n points. */
    explicit PointSet(std::size_t n) : bits_(n) {}

    /** The full ground set {0, ..., n-1}. */
    static PointSet full(std::size_t n) {
        PointSet s(n);
        s.bits_.set();
        return s;
    }

    /** Subset of {0, ..., n-1} given by an explicit list of points. */
    static PointSet of(std::size_t n, std::initializer_list<std::size_t> pts) {
        PointSet s(n);
        for (std::size_t p : pts) s.insert(p);
        return s;
    }

    /** Parse the canonical bit-string form; character k is point k. */
    static PointSet from_bits(const std::string& text) {
        PointSet s(text.size());
        for (std::size_t k = 0; k < text.size(); ++k) {
            if (text[k] == '1') s.bits_.set(k);
            else if (text[k] != '0')
                throw std::invalid_argument("PointSet::from_bits: expected '0' or '1', got '" +
                                            std::string(1, text[k]) + "'");
        }
        return s;
    }

    std::size_t universe_size() const { return bits_.size(); }
    std::size_t count() const { return bits_.count(); }
    bool empty() const { return bits_.none(); }
    bool is_full() const { return bits_.all() && bits_.size() > 0; }

    bool contains(std::size_t x) const {
        check_point(x);
        return bits_.test(x);
    }

    void insert(std::size_t x) {
        check_point(x);
        bits_.set(x);
    }

    void erase(std::size_t x) {
        check_point(x);
        bits_.reset(x);
    }

    bool is_subset_of(const PointSet& other) const {
        check_universe(other);
        return bits_.is_subset_of(other.bits_);
    }

    bool intersects(const PointSet& other) const {
        check_universe(other);
        return bits_.intersects(other.bits_);
    }

    PointSet operator|(const PointSet& other) const {
        check_universe(other);
        PointSet r(*this);
        r.bits_ |= other.bits_;
        return r;
    }

    PointSet operator&(const PointSet& other) const {
        check_universe(other);
        PointSet r(*this);
        r.bits_ &= other.bits_;
        return r;
    }

    /** Set difference (this minus other). */
    PointSet operator-(const PointSet& other) const {
        check_universe(other);
        PointSet r(*this);
        r.bits_ -= other.bits_;
        return r;
    }

    PointSet complement() const {
        PointSet r(*this);
        r.bits_.flip();
        return r;
    }

    PointSet& operator|=(const PointSet& other) {
        check_universe(other);
        bits_ |= other.bits_;
        return *this;
    }

    PointSet& operator&=(const PointSet& other) {
        check_universe(other);
        bits_ &= other.bits_;
        return *this;
    }

    bool operator==(const PointSet& other) const {
        return bits_ == other.bits_;
    }
    bool operator!=(const PointSet& other) const { return !(*this == other); }

    /** Total order (by size, then lexicographic bit-string); used for canonical sorting. */
    bool operator<(const PointSet& other) const {
        if (bits_.size() != other.bits_.size()) return bits_.size() < other.bits_.size();
        if (count() != other.count()) return count() < other.count();
        for (std::size_t k = 0; k < bits_.size(); ++k)
            if (bits_.test(k) != other.bits_.test(k)) return other.bits_.test(k);
        return false;
    }

    /** Members in ascending order. */
    std::vector<std::size_t> points() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for (std::size_t x = bits_.find_first(); x != boost::dynamic_bitset<>::npos;
             x = bits_.find_next(x))
            out.push_back(x);
        return out;
    }

    /** Canonical bit-string form; inverse of from_bits. */
    std::string bits() const {
        std::string out(bits_.size(), '0');
        for (std::size_t x = bits_.find_first(); x != boost::dynamic_bitset<>::npos;
             x = bits_.find_next(x))
            out[x] = '1';
        return out;
    }

    std::size_t hash() const {
        std::vector<boost::dynamic_bitset<>::block_type> blocks(bits_.num_blocks());
        boost::to_block_range(bits_, blocks.begin());
        std::size_t seed = bits_.size();
        boost::hash_range(seed, blocks.begin(), blocks.end());
        return seed;
    }

private:
    void check_point(std::size_t x) const {
        if (x >= bits_.size())
            throw std::out_of_range("PointSet: point " + std::to_string(x) +
                                    " outside ground set of size " + std::to_string(bits_.size()));
    }
    void check_universe(const PointSet& other) const {
        if (bits_.size() != other.bits_.size())
            throw std::invalid_argument("PointSet: mismatched ground sets (" +
                                        std::to_string(bits_.size()) + " vs " +
                                        std::to_string(other.bits_.size()) + ")");
    }

    boost::dynamic_bitset<> bits_;
};

struct PointSetHash {
    std::size_t operator()(const PointSet& s) const { return s.hash(); }
};

}  // namespace cech
