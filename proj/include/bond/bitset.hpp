#ifndef BOND_BITSET_HPP
#define BOND_BITSET_HPP

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace bond {

/// Dense vertex set over a fixed universe 0..n-1, stored as 64-bit blocks.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int universe)
        : n_(universe), bits_((universe + 63) / 64, 0) {
        if (universe < 0) throw std::invalid_argument("negative universe");
    }

    static VertexSet of(int universe, std::initializer_list<int> vs) {
        VertexSet s(universe);
        for (int v : vs) s.insert(v);
        return s;
    }

    static VertexSet full(int universe) {
        VertexSet s(universe);
        for (int v = 0; v < universe; ++v) s.insert(v);
        return s;
    }

    int universe() const { return n_; }

    bool contains(int v) const {
        return v >= 0 && v < n_ && (bits_[v >> 6] >> (v & 63)) & 1u;
    }

    void insert(int v) {
        check_range(v);
        bits_[v >> 6] |= std::uint64_t{1} << (v & 63);
    }

    void erase(int v) {
        check_range(v);
        bits_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }

    int count() const {
        int c = 0;
        for (std::uint64_t w : bits_) c += __builtin_popcountll(w);
        return c;
    }

    bool empty() const {
        for (std::uint64_t w : bits_)
            if (w) return false;
        return true;
    }

    VertexSet complement() const {
        VertexSet r(n_);
        for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = ~bits_[i];
        r.trim();
        return r;
    }

    VertexSet operator|(const VertexSet& o) const {
        VertexSet r = widest(o);
        for (std::size_t i = 0; i < o.bits_.size() && i < r.bits_.size(); ++i)
            r.bits_[i] |= o.bits_[i];
        for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] |= bits_[i];
        return r;
    }

    VertexSet operator&(const VertexSet& o) const {
        VertexSet r(n_ < o.n_ ? n_ : o.n_);
        for (std::size_t i = 0; i < r.bits_.size(); ++i)
            r.bits_[i] = bits_[i] & o.bits_[i];
        return r;
    }

    /// Set difference.
    VertexSet operator-(const VertexSet& o) const {
        VertexSet r = *this;
        for (std::size_t i = 0; i < r.bits_.size() && i < o.bits_.size(); ++i)
            r.bits_[i] &= ~o.bits_[i];
        return r;
    }

    bool intersects(const VertexSet& o) const {
        std::size_t k = bits_.size() < o.bits_.size() ? bits_.size() : o.bits_.size();
        for (std::size_t i = 0; i < k; ++i)
            if (bits_[i] & o.bits_[i]) return true;
        return false;
    }

    bool is_subset_of(const VertexSet& o) const {
        for (std::size_t i = 0; i < bits_.size(); ++i) {
            std::uint64_t other = i < o.bits_.size() ? o.bits_[i] : 0;
            if (bits_[i] & ~other) return false;
        }
        return true;
    }

    bool operator==(const VertexSet& o) const {
        std::size_t k = bits_.size() > o.bits_.size() ? bits_.size() : o.bits_.size();
        for (std::size_t i = 0; i < k; ++i) {
            std::uint64_t a = i < bits_.size() ? bits_[i] : 0;
            std::uint64_t b = i < o.bits_.size() ? o.bits_[i] : 0;
            if (a != b) return false;
        }
        return true;
    }
    bool operator!=(const VertexSet& o) const { return !(*this == o); }

    /// Bitset order in the printed (highest-index-first) sense, which equals
    /// numeric order of the characteristic value: the set missing the highest
    /// differing vertex is smaller.
    bool lex_less(const VertexSet& o) const {
        std::size_t k = bits_.size() > o.bits_.size() ? bits_.size() : o.bits_.size();
        for (std::size_t i = k; i-- > 0;) {
            std::uint64_t a = i < bits_.size() ? bits_[i] : 0;
            std::uint64_t b = i < o.bits_.size() ? o.bits_[i] : 0;
            if (a != b) return a < b;
        }
        return false;
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(count());
        for (int v = 0; v < n_; ++v)
            if (contains(v)) out.push_back(v);
        return out;
    }

private:
    VertexSet widest(const VertexSet& o) const {
        VertexSet r(n_ > o.n_ ? n_ : o.n_);
        return r;
    }
    void check_range(int v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("vertex id out of range");
    }
    void trim() {
        int rem = n_ & 63;
        if (rem && !bits_.empty()) bits_.back() &= (std::uint64_t{1} << rem) - 1;
    }

    int n_ = 0;
    std::vector<std::uint64_t> bits_;
};

}  // namespace bond

#endif
