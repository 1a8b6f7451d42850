#pragma once
// Subspaces of the state space: a base state plus a set of free positions.
// Rendered as strings over '0'/'1'/'*'. Two subspaces containing the same
// states compare equal: free positions of the base are kept at 0.

#include <string>
#include <vector>

#include "lateral/bits.hpp"

namespace lateral {

class Subspace {
public:
    Subspace() = default;
    Subspace(State base, Bits free_positions)
        : base_(std::move(base)), free_(std::move(free_positions)) {
        if (base_.size() != free_.size())
            throw std::invalid_argument("subspace base/free length mismatch");
        base_ = base_.minus(free_);
    }

    static Subspace of_state(const State& s) { return Subspace(s, Bits(s.size())); }
    static Subspace full(int n) { return Subspace(State(n), Bits::ones(n)); }

    // Parses a string over '0','1','*'.
    static Subspace parse(const std::string& s) {
        State base(static_cast<int>(s.size()));
        Bits free(static_cast<int>(s.size()));
        for (int i = 0; i < base.size(); ++i) {
            char c = s[static_cast<size_t>(i)];
            if (c == '1') base.set(i, true);
            else if (c == '*') free.set(i, true);
            else if (c != '0')
                throw std::invalid_argument("invalid subspace string: expected '0'/'1'/'*', got '" + std::string(1, c) + "'");
        }
        return Subspace(std::move(base), std::move(free));
    }

    int size() const { return base_.size(); }
    const State& base() const { return base_; }
    const Bits& free() const { return free_; }
    int free_count() const { return free_.count(); }
    bool is_point() const { return free_.none(); }
    bool is_full() const { return free_.count() == free_.size(); }

    bool contains(const State& s) const {
        return s.size() == size() && s.minus(free_) == base_;
    }
    bool contains(const Subspace& o) const {
        return o.size() == size() && o.free_.subset_of(free_) && o.base_.minus(free_) == base_;
    }

    // Representative completion: free positions set to `fill`.
    State completion(bool fill) const {
        return fill ? (base_ | free_) : base_;
    }

    // Enumerates all member states; intended for small free sets.
    std::vector<State> states() const {
        std::vector<int> fp = free_.positions();
        if (fp.size() > 24) throw std::invalid_argument("subspace too large to enumerate");
        std::vector<State> out;
        out.reserve(size_t{1} << fp.size());
        uint64_t total = uint64_t{1} << fp.size();
        for (uint64_t m = 0; m < total; ++m) {
            State s = base_;
            for (size_t b = 0; b < fp.size(); ++b)
                if ((m >> b) & 1) s.set(fp[b], true);
            out.push_back(std::move(s));
        }
        return out;
    }

    std::string str() const {
        std::string s = base_.str();
        free_.for_each([&](int i) { s[static_cast<size_t>(i)] = '*'; });
        return s;
    }

    bool operator==(const Subspace& o) const { return base_ == o.base_ && free_ == o.free_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
    bool operator<(const Subspace& o) const {
        if (!(base_ == o.base_)) return base_ < o.base_;
        return free_ < o.free_;
    }

    size_t hash() const { return base_.hash() * 31 + free_.hash(); }

private:
    State base_;
    Bits free_;
};

struct SubspaceHash {
    size_t operator()(const Subspace& s) const { return s.hash(); }
};

} // namespace lateral
