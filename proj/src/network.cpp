#include "lateral/network.hpp"

#include <stdexcept>

namespace lateral {

Network::Network(CellGraph g, ModelKind kind, int k, NeighborRule rule)
    : g_(std::move(g)), kind_(kind), rule_(rule), k_(k) {
    if (k_ < 1) throw std::invalid_argument("threshold k must be at least 1");
}

void Network::check_dim(const State& x) const {
    if (x.size() != dim()) throw std::invalid_argument("state dimension mismatch");
}

bool Network::component(const State& x, int pos) const {
    check_dim(x);
    int L = cells();
    if (pos < 0 || pos >= dim()) throw std::out_of_range("component index out of range");
    if (kind_ == ModelKind::full && pos >= L)
        return !x.get(pos - L); // Delta_i = not Notch_i
    // Neighbour drive: Delta levels (full) or negated cell levels (reduced).
    int cell = pos;
    int high = 0;
    for (int j : g_.neighbors(cell)) {
        bool input = kind_ == ModelKind::full ? x.get(delta_pos(j)) : !x.get(j);
        if (input) ++high;
    }
    if (rule_ == NeighborRule::all_neighbors) return high == g_.degree(cell);
    return high >= k_;
}

State Network::evaluate(const State& x) const {
    check_dim(x);
    State y(dim());
    for (int i = 0; i < dim(); ++i) y.set(i, component(x, i));
    return y;
}

std::vector<int> Network::unstable_positions(const State& x) const {
    check_dim(x);
    std::vector<int> out;
    for (int i = 0; i < dim(); ++i)
        if (component(x, i) != x.get(i)) out.push_back(i);
    return out;
}

std::vector<Transition> Network::async_successors(const State& x) const {
    std::vector<Transition> out;
    for (int i : unstable_positions(x)) out.push_back({x, i});
    return out;
}

Network build_network(const CellGraph& g, ModelKind kind, int k) {
    return Network(g, kind, k, NeighborRule::at_least_k);
}

Network build_conjugate_and(const CellGraph& g) {
    return Network(g, ModelKind::full, 1, NeighborRule::all_neighbors);
}

Network reduce_eliminate(const Network& full) {
    if (full.kind() != ModelKind::full)
        throw std::invalid_argument("reduce_eliminate expects a full model");
    // Substituting Delta_j = not Notch_j into every Notch update leaves a
    // network on the cell variables with the same neighbour rule.
    return Network(full.graph(), ModelKind::reduced, full.k(), full.rule());
}

} // namespace lateral
