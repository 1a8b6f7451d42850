#pragma once
// How stable patterns respond to perturbations: the trap space the
// perturbed system is confined to, the patterns it can settle into, cycle
// exposure, and how far the change can propagate. Includes the threshold-2
// chain-of-triangles gadget where a single flip travels arbitrarily far.

#include <string>
#include <vector>

#include "lateral/cellgraph.hpp"
#include "lateral/network.hpp"
#include "lateral/subspace.hpp"
#include "lateral/witness.hpp"

namespace lateral {

enum class VarChoice { notch, delta, both };

struct PerturbedVar {
    int cell = 0;
    VarChoice vars = VarChoice::both;
};

struct PerturbationReport {
    State pattern;
    CellSet cells; // H
    ModelKind kind = ModelKind::full;
    int k = 1;
    State perturbed; // pattern with the selected variables flipped
    Subspace trap_space;
    // True when the trap space comes from the closed form for freed cells;
    // false when it is the closure of the perturbed subspace ("closure-derived").
    bool trap_space_closed_form = false;
    std::vector<State> reachable_patterns;
    bool reachable_exact = true; // k=1 answers are exact; k>=2 closure-derived
    bool returns_only_to_original = false;
    bool cycle_exposed = false;
    int radius = 0; // max distance from H to a free cell of the trap space
};

PerturbationReport analyze_perturbation(const CellGraph& g, const State& pattern,
                                        const std::vector<PerturbedVar>& selection,
                                        ModelKind kind, int k = 1);
// Uniform variable choice for every cell of H.
PerturbationReport analyze_perturbation(const CellGraph& g, const State& pattern,
                                        const CellSet& h, VarChoice vars, ModelKind kind,
                                        int k = 1);

struct RadiusViolation {
    State pattern;
    int position; // flipped variable
    int bound;
    int radius;
};

struct RadiusCheckReport {
    long long cases = 0;
    int max_radius_raise = 0; // low Notch raised / high Delta dropped: bound 1
    int max_radius_drop = 0;  // high Notch dropped / low Delta raised: bound 2
    std::vector<RadiusViolation> violations;
    // For every (pattern, cell): the closed-form trap space that witnesses
    // the bound stayed inside the allowed ball.
    bool witnesses_in_ball = true;

    bool ok() const { return violations.empty() && witnesses_in_ball; }
};

// Sweeps every pattern and every single-variable flip (k=1): changes that
// raise a low Notch or drop a high Delta stay within distance 1, the
// opposite flips within distance 2.
RadiusCheckReport propagation_radius_bound_check(const CellGraph& g, ModelKind kind);

// Chain of m triangle units for the threshold-2 reduced model: flipping
// one end cell of the stable pattern lets the dynamics reach a pattern
// that differs arbitrarily far down the chain.
struct LadderInstance {
    CellGraph graph;
    State pattern;      // fixed point of the reduced k=2 model
    int perturbed_cell; // 0-based
    State far_pattern;  // fixed point reached after the flip
    PathWitness witness; // from pattern with the cell flipped, to far_pattern
    int reach_distance;  // max distance from the cell to a differing cell
};

LadderInstance ladder_counterexample(int units);

} // namespace lateral
