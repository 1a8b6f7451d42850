#pragma once
// Which patterns are reachable from where: closed-form predicates for the
// reduced and full models (k=1), constructive replayable witnesses, and
// weak/strong basins of attraction.

#include <optional>
#include <string>
#include <vector>

#include "lateral/cellgraph.hpp"
#include "lateral/network.hpp"
#include "lateral/subspace.hpp"
#include "lateral/witness.hpp"

namespace lateral {

// Fixed points reachable from x in the reduced model: partition the low
// cells of x into connected blocks; a pattern is reachable iff it keeps
// some cell of every block low.
std::vector<State> reachable_fixed_points_reduced(const CellGraph& g, const State& x);

// Fixed points reachable from y in the full model: exactly the fixed
// points inside the minimal trap space of y.
std::vector<State> reachable_fixed_points_full(const CellGraph& g, const State& y);

// Homogeneous starting corners. The reduced model accepts all_zeros and
// all_ones; the full model accepts all four (Notch block, Delta block).
enum class Corner { all_zeros, all_ones, notch_on_delta_off, notch_off_delta_on };

State corner_state(const CellGraph& g, Corner corner, ModelKind kind);

// Constructive path from a homogeneous corner to a pattern (k=1).
PathWitness witness_homogeneous_to_pattern(const CellGraph& g, const State& pattern,
                                           Corner origin, ModelKind kind);

// Constructive path in the reduced model that raises the cells of J while
// keeping `kept_cell` low; requires a connected low set containing both.
PathWitness witness_tree_flips(const CellGraph& g, const State& x, const CellSet& low_set,
                               int kept_cell, const CellSet& to_raise);

// Constructive path from a state with full-space minimal trap space to the
// corner (Notch on, Delta off).
PathWitness witness_to_homogeneous_full(const CellGraph& g, const State& x);

enum class BasinMode { weak, strong };

struct BasinReport {
    State fixed_point;
    BasinMode mode = BasinMode::weak;
    ModelKind kind = ModelKind::full;
    std::string predicate;
    std::optional<std::vector<State>> states; // filled when enumerate was requested
};

// Membership in the weak/strong basin of fp, closed form (k=1).
bool in_basin(const CellGraph& g, const State& fp, const State& y, BasinMode mode,
              ModelKind kind);

BasinReport basin(const CellGraph& g, const State& fp, BasinMode mode, ModelKind kind,
                  bool enumerate, int limit = 20);

} // namespace lateral
