#pragma once
// Fixed-length bit vector. Used both for network states (one bit per
// variable) and for cell sets (one bit per cell). Positions are 0-based;
// external formats (JSON, CLI) are 1-based and converted at the boundary.

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace lateral {

class Bits {
public:
    Bits() = default;
    explicit Bits(int n) : n_(check_len(n)), w_(words(n), 0) {}

    static Bits zeros(int n) { return Bits(n); }
    static Bits ones(int n) {
        Bits b(n);
        for (auto& w : b.w_) w = ~uint64_t{0};
        b.trim();
        return b;
    }

    // Parses a string of '0'/'1', leftmost char = position 0.
    static Bits parse(const std::string& s) {
        Bits b(static_cast<int>(s.size()));
        for (int i = 0; i < b.n_; ++i) {
            char c = s[static_cast<size_t>(i)];
            if (c == '1') b.set(i, true);
            else if (c != '0') throw std::invalid_argument("invalid state string: expected only '0'/'1', got '" + std::string(1, c) + "'");
        }
        return b;
    }

    int size() const { return n_; }

    bool get(int i) const {
        bounds(i);
        return (w_[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1u;
    }
    void set(int i, bool v) {
        bounds(i);
        uint64_t m = uint64_t{1} << (i & 63);
        if (v) w_[static_cast<size_t>(i) >> 6] |= m;
        else w_[static_cast<size_t>(i) >> 6] &= ~m;
    }
    void flip(int i) {
        bounds(i);
        w_[static_cast<size_t>(i) >> 6] ^= uint64_t{1} << (i & 63);
    }
    Bits flipped(int i) const {
        Bits b = *this;
        b.flip(i);
        return b;
    }

    int count() const {
        int c = 0;
        for (uint64_t w : w_) c += __builtin_popcountll(w);
        return c;
    }
    bool any() const {
        for (uint64_t w : w_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    bool subset_of(const Bits& o) const {
        same_len(o);
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }
    bool intersects(const Bits& o) const {
        same_len(o);
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    Bits operator~() const {
        Bits b = *this;
        for (auto& w : b.w_) w = ~w;
        b.trim();
        return b;
    }
    Bits operator&(const Bits& o) const { return zip(o, [](uint64_t a, uint64_t b) { return a & b; }); }
    Bits operator|(const Bits& o) const { return zip(o, [](uint64_t a, uint64_t b) { return a | b; }); }
    Bits operator^(const Bits& o) const { return zip(o, [](uint64_t a, uint64_t b) { return a ^ b; }); }
    // Set difference: bits of *this not in o.
    Bits minus(const Bits& o) const { return zip(o, [](uint64_t a, uint64_t b) { return a & ~b; }); }

    bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const Bits& o) const { return !(*this == o); }
    // Lexicographic by position (position 0 most significant), so the order
    // matches the order of the rendered strings.
    bool operator<(const Bits& o) const {
        if (n_ != o.n_) return n_ < o.n_;
        for (int i = 0; i < n_; ++i) {
            bool a = get(i), b = o.get(i);
            if (a != b) return !a;
        }
        return false;
    }

    std::string str() const {
        std::string s(static_cast<size_t>(n_), '0');
        for (int i = 0; i < n_; ++i)
            if (get(i)) s[static_cast<size_t>(i)] = '1';
        return s;
    }

    uint64_t to_uint() const {
        if (n_ > 64) throw std::invalid_argument("state too wide for integer packing");
        return w_.empty() ? 0 : w_[0];
    }
    static Bits from_uint(int n, uint64_t v) {
        if (n > 64) throw std::invalid_argument("state too wide for integer packing");
        Bits b(n);
        if (!b.w_.empty()) b.w_[0] = v;
        b.trim();
        return b;
    }

    std::vector<int> positions() const {
        std::vector<int> p;
        p.reserve(static_cast<size_t>(count()));
        for_each([&](int i) { p.push_back(i); });
        return p;
    }

    template <class F>
    void for_each(F&& f) const {
        for (size_t wi = 0; wi < w_.size(); ++wi) {
            uint64_t w = w_[wi];
            while (w) {
                int b = __builtin_ctzll(w);
                f(static_cast<int>(wi * 64) + b);
                w &= w - 1;
            }
        }
    }

    size_t hash() const {
        size_t h = std::hash<int>{}(n_);
        for (uint64_t w : w_) h ^= std::hash<uint64_t>{}(w) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }

private:
    static int check_len(int n) {
        if (n < 0) throw std::invalid_argument("negative bit-vector length");
        return n;
    }
    static size_t words(int n) { return (static_cast<size_t>(n) + 63) / 64; }
    void bounds(int i) const {
        if (i < 0 || i >= n_) throw std::out_of_range("bit position out of range");
    }
    void same_len(const Bits& o) const {
        if (n_ != o.n_) throw std::invalid_argument("bit-vector length mismatch");
    }
    void trim() {
        if (n_ & 63) w_.back() &= (uint64_t{1} << (n_ & 63)) - 1;
    }
    template <class Op>
    Bits zip(const Bits& o, Op op) const {
        same_len(o);
        Bits b(n_);
        for (size_t i = 0; i < w_.size(); ++i) b.w_[i] = op(w_[i], o.w_[i]);
        b.trim();
        return b;
    }

    int n_ = 0;
    std::vector<uint64_t> w_;
};

// A network state: bit i is variable i. For full models of a graph with L
// cells, positions 0..L-1 hold Notch and L..2L-1 hold Delta.
using State = Bits;
// A set of cells, one bit per cell (0-based internally).
using CellSet = Bits;

// Builds a cell set from 1-based cell indices, the convention of all
// external formats.
inline CellSet cells1(int L, std::initializer_list<int> members) {
    CellSet s(L);
    for (int c : members) {
        if (c < 1 || c > L) throw std::out_of_range("cell index out of range");
        s.set(c - 1, true);
    }
    return s;
}

inline std::vector<int> to_1based(const CellSet& s) {
    std::vector<int> v;
    s.for_each([&](int i) { v.push_back(i + 1); });
    return v;
}

struct BitsHash {
    size_t operator()(const Bits& b) const { return b.hash(); }
};

} // namespace lateral
