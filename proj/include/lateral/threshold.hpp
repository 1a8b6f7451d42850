#pragma once
// Threshold-network form of the reduced models and the associated energy
// function. Every quantity is a half-integer, kept exact as a count of
// halves, so "strictly decreasing" is an integer comparison.

#include <string>
#include <vector>

#include "lateral/cellgraph.hpp"
#include "lateral/network.hpp"

namespace lateral {

// Exact rational with denominator 2.
struct Half {
    long long halves = 0;

    static Half of_int(long long v) { return {2 * v}; }
    double value() const { return static_cast<double>(halves) / 2.0; }
    std::string str() const;

    Half operator+(Half o) const { return {halves + o.halves}; }
    Half operator-(Half o) const { return {halves - o.halves}; }
    bool operator<(Half o) const { return halves < o.halves; }
    bool operator==(Half o) const { return halves == o.halves; }
        bool operator!=(Half o) const { return halves != o.halves; }
};

// A = -(adjacency matrix), b_i = -|S(i)| + k - 1/2. The induced strict
// threshold rule (value 1 iff (Ax)_i > b_i) coincides with the reduced
// model; the offset 1/2 keeps (Ax)_i - b_i away from zero.
struct ThresholdParams {
    CellGraph graph;
    int k = 1;

    int entry_a(int i, int j) const { return graph.adjacent(i, j) ? -1 : 0; }
    Half b(int i) const { return {2 * (k - graph.degree(i)) - 1}; }
    // Strict rule induced by (A, b).
    bool rule(const State& x, int i) const;
    // (Ax)_i - b_i, always a nonzero half-integer.
    Half margin(const State& x, int i) const;
};

ThresholdParams build_threshold_params(const CellGraph& g, int k = 1);

// E(x) = -1/2 x^T A x + b^T x, exact.
Half energy(const ThresholdParams& p, const State& x);

struct EnergyReport {
    long long transition_count = 0;
    long long violation_count = 0;
    bool any_transition = false;
    Half min_gap{0}; // smallest observed E(x) - E(x') over transitions x -> x'
};

// Sweeps every asynchronous transition of the reduced model and checks the
// energy strictly decreases along each one.
EnergyReport verify_energy_decrease(const CellGraph& g, int k, int limit = 20);

} // namespace lateral
