#pragma once
// Closed-form enumeration of the stable patterns. For the disjunctive
// system the fixed points correspond to the inclusion-minimal vertex
// covers of the cell graph; for threshold k they correspond to the
// k-minimal transversals of a hypergraph whose edges are a vertex
// together with k of its neighbours.

#include <vector>

#include "lateral/cellgraph.hpp"
#include "lateral/network.hpp"

namespace lateral {

struct Hypergraph {
    int vertex_count = 0;
    std::vector<CellSet> edges; // sorted, deduplicated
};

struct Pattern {
    CellSet cover;  // high cells (minimal cover / k-minimal transversal)
    State reduced;  // indicator state, length L
    State full;     // (reduced, ~reduced), length 2L

    const State& state_for(ModelKind kind) const {
        return kind == ModelKind::full ? full : reduced;
    }
};

struct PatternSet {
    std::vector<Pattern> patterns; // lexicographic by reduced state
    ModelKind kind = ModelKind::reduced;

    std::vector<State> states() const {
        std::vector<State> out;
        out.reserve(patterns.size());
        for (const auto& p : patterns) out.push_back(p.state_for(kind));
        return out;
    }
};

// All inclusion-minimal vertex covers, lexicographically ordered.
std::vector<CellSet> minimal_vertex_covers(const CellGraph& g);

// Hyperedges {i} u H for every cell i and every k-subset H of S(i);
// cells with fewer than k neighbours contribute none.
Hypergraph build_hk(const CellGraph& g, int k);

// Transversals Q of h with |S(i) & Q| <= |S(i)| - k for every i in Q.
// Vertices with degree < k never appear. Lexicographic order.
std::vector<CellSet> k_minimal_transversals(const Hypergraph& h, const CellGraph& g, int k);

// Stable patterns of the chosen model. k=1 routes through the vertex
// covers, k>=2 through the transversals; full patterns pair each reduced
// state with its negation on the Delta block.
PatternSet fixed_points(const CellGraph& g, ModelKind kind, int k = 1);

} // namespace lateral
