#pragma once
// Exact trap-space analysis: membership checks against the closed-form
// characterizations, minimal trap spaces around perturbed patterns,
// maximal proper trap spaces, lifting between the reduced and full
// models, and complete enumeration.

#include <optional>
#include <string>
#include <vector>

#include "lateral/cellgraph.hpp"
#include "lateral/network.hpp"
#include "lateral/subspace.hpp"

namespace lateral {

struct TrapSpaceCheck {
    bool is_trap = false;
    std::optional<State> representative; // fixed point inside the subspace
    std::vector<std::string> clauses;    // which characterization clauses held or failed

    explicit operator bool() const { return is_trap; }
};

// Free positions of a full-model subspace split into cells with free
// Notch and cells with free Delta.
struct FreeSplit {
    CellSet notch; // cells whose Notch position is free
    CellSet delta; // cells whose Delta position is free
};
FreeSplit split_free(const Bits& free_positions, int L);
Bits join_free(const FreeSplit& split);

// Membership checks; `s` must have dimension L (reduced) or 2L (full).
// The overloads taking fixed-point states avoid re-enumerating the
// patterns on every call in sweeps.
TrapSpaceCheck is_trap_space_reduced(const CellGraph& g, const Subspace& s, int k = 1);
TrapSpaceCheck is_trap_space_reduced(const CellGraph& g, const Subspace& s, int k,
                                     const std::vector<State>& reduced_fixed_points);
TrapSpaceCheck is_trap_space_full(const CellGraph& g, const Subspace& s, int k = 1);
TrapSpaceCheck is_trap_space_full(const CellGraph& g, const Subspace& s, int k,
                                  const std::vector<State>& full_fixed_points);

namespace detail {
// Count-based full-model conditions, valid for every k >= 1; used as a
// second route and cross-checked against the k=1 clauses in tests.
TrapSpaceCheck is_trap_space_full_via_counts(const CellGraph& g, const Subspace& s, int k);
TrapSpaceCheck is_trap_space_full_via_counts(const CellGraph& g, const Subspace& s, int k,
                                             const std::vector<State>& full_fixed_points);
} // namespace detail

// Reduced trap space x[I] -> full trap space (x,~x)[I u (I+L)].
// Validates the input; throws if it is not a trap space.
Subspace lift_trap_space(const CellGraph& g, const Subspace& reduced, int k = 1);
// Notch-block projection of a full subspace.
Subspace project_to_notch(const Subspace& full_subspace, int L);

// Minimal trap space containing the pattern with the cells of H freed
// (both variables of each cell in the full model). Closed form, k=1 only.
Subspace minimal_trap_space_around(const CellGraph& g, const State& fixed_point,
                                   const CellSet& h, ModelKind kind);

// Minimal trap space containing x, by the extremal-completion closure.
// Works for any of the network families and any k.
Subspace kappa(const CellGraph& g, const State& x, ModelKind kind, int k = 1);
Subspace kappa_net(const Network& net, const State& x);
// Same closure started from a whole subspace.
Subspace kappa_of_subspace(const Network& net, const Subspace& start);

// Maximal proper trap spaces (k=1, L>=2): candidates freeze one low cell
// together with its neighbourhood, then non-maximal candidates are dropped.
std::vector<Subspace> maximal_trap_spaces(const CellGraph& g, ModelKind kind);

// Complete list of trap spaces, canonical order (fewer free positions
// first, then by rendered string).
std::vector<Subspace> enumerate_trap_spaces(const CellGraph& g, ModelKind kind,
                                            int k = 1, int limit = 12);

// DOT rendering of the containment order (edges point from the larger
// space to the immediately smaller one).
std::string hasse_dot(const std::vector<Subspace>& spaces);

} // namespace lateral
