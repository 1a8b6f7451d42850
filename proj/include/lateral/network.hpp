#pragma once
// Update rules of the Delta-Notch networks over a cell graph.
//
// Full model (2L variables): Notch of cell i is driven by the Delta levels
// of its neighbours, Delta of cell i is the negation of its own Notch.
// Reduced model (L variables): each cell carries one variable, driven by
// the negated levels of its neighbours.
//
// The neighbour drive is either a threshold ("at least k neighbour inputs
// high") or a conjunction ("all neighbour inputs high", 1 for isolated
// cells). Threshold k=1 is the plain disjunctive system.

#include <vector>

#include "lateral/cellgraph.hpp"

namespace lateral {

enum class ModelKind { full, reduced };
enum class NeighborRule { at_least_k, all_neighbors };

struct Transition {
    State source;
    int position; // flipped coordinate
    State target() const { return source.flipped(position); }
};

class Network {
public:
    Network(CellGraph g, ModelKind kind, int k, NeighborRule rule = NeighborRule::at_least_k);

    const CellGraph& graph() const { return g_; }
    ModelKind kind() const { return kind_; }
    NeighborRule rule() const { return rule_; }
    int k() const { return k_; }
    int cells() const { return g_.cell_count(); }
    int dim() const { return kind_ == ModelKind::full ? 2 * cells() : cells(); }

    // Value of component `pos` of the update function at x.
    bool component(const State& x, int pos) const;
    // Synchronous image f(x).
    State evaluate(const State& x) const;
    // Positions where f disagrees with x; empty iff x is a fixed point.
    std::vector<int> unstable_positions(const State& x) const;
    std::vector<Transition> async_successors(const State& x) const;
    bool is_fixed_point(const State& x) const { return unstable_positions(x).empty(); }

    void check_dim(const State& x) const;

    // Delta position of a cell in the full model.
    int delta_pos(int cell) const { return cells() + cell; }

private:
    CellGraph g_;
    ModelKind kind_;
    NeighborRule rule_;
    int k_;
};

// At-least-k network over g: the full Delta-Notch system F (kind=full) or
// its one-variable-per-cell counterpart N (kind=reduced). k=1 gives the
// disjunctive base model.
Network build_network(const CellGraph& g, ModelKind kind, int k = 1);

// The conjunctive full model: Notch needs all neighbour Delta levels high.
// Satisfies ~F_and(~x) == F_or(x) componentwise.
Network build_conjugate_and(const CellGraph& g);

// Variable elimination of all Delta components; maps the full model onto
// the reduced one over the same graph (same k, same neighbour rule).
Network reduce_eliminate(const Network& full);

} // namespace lateral
