#include "lateral/robustness.hpp"

#include <algorithm>
#include <stdexcept>

#include "lateral/patterns.hpp"
#include "lateral/reach.hpp"
#include "lateral/trapspaces.hpp"

namespace lateral {

namespace {

CellSet free_cells_of(const Subspace& s, ModelKind kind, int L) {
    if (kind == ModelKind::reduced) {
        CellSet c(L);
        s.free().for_each([&](int p) { c.set(p, true); });
        return c;
    }
    FreeSplit fs = split_free(s.free(), L);
    return fs.notch | fs.delta;
}

int radius_from(const CellGraph& g, const CellSet& h, const CellSet& cells) {
    int r = 0;
    cells.for_each([&](int c) {
        CellSet single(g.cell_count());
        single.set(c, true);
        r = std::max(r, g.set_distance(h, single));
    });
    return r;
}

} // namespace

PerturbationReport analyze_perturbation(const CellGraph& g, const State& pattern,
                                        const std::vector<PerturbedVar>& selection,
                                        ModelKind kind, int k) {
    int L = g.cell_count();
    Network net = build_network(g, kind, k);
    net.check_dim(pattern);
    if (!net.is_fixed_point(pattern))
        throw std::invalid_argument("perturbation analysis starts from a fixed point");
    if (selection.empty()) throw std::invalid_argument("no perturbed cells given");

    PerturbationReport report;
    report.pattern = pattern;
    report.kind = kind;
    report.k = k;
    report.cells = CellSet(L);

    Bits freed(net.dim());
    bool all_both = true;
    for (const auto& sel : selection) {
        if (sel.cell < 0 || sel.cell >= L) throw std::out_of_range("perturbed cell out of range");
        report.cells.set(sel.cell, true);
        if (kind == ModelKind::reduced) {
            if (sel.vars == VarChoice::delta)
                throw std::invalid_argument("the reduced model has no Delta variables");
            freed.set(sel.cell, true);
            continue;
        }
        if (sel.vars != VarChoice::both) all_both = false;
        if (sel.vars != VarChoice::delta) freed.set(sel.cell, true);
        if (sel.vars != VarChoice::notch) freed.set(L + sel.cell, true);
    }

    report.perturbed = pattern ^ freed;

    bool closed_form = k == 1 && (kind == ModelKind::reduced || all_both);
    if (closed_form) {
        report.trap_space = minimal_trap_space_around(g, pattern, report.cells, kind);
        report.trap_space_closed_form = true;
    } else {
        report.trap_space = kappa_of_subspace(net, Subspace(pattern, freed));
        report.trap_space_closed_form = false;
    }

    Subspace kap = kappa_net(net, report.perturbed);
    if (k == 1) {
        report.reachable_patterns =
            kind == ModelKind::reduced ? reachable_fixed_points_reduced(g, report.perturbed)
                                       : reachable_fixed_points_full(g, report.perturbed);
        report.reachable_exact = true;
    } else {
        // No closed reachability theory at higher thresholds: report the
        // patterns inside the minimal trap space of the perturbed state.
        for (const auto& p : fixed_points(g, kind, k).patterns)
            if (kap.contains(p.state_for(kind))) report.reachable_patterns.push_back(p.state_for(kind));
        report.reachable_exact = false;
    }
    report.returns_only_to_original =
        report.reachable_patterns.size() == 1 && report.reachable_patterns.front() == pattern;

    if (kind == ModelKind::full) {
        FreeSplit fs = split_free(kap.free(), L);
        CellSet kap_cells = fs.notch | fs.delta;
        report.cycle_exposed = g.neighborhood_of_set(kap_cells).intersects(fs.delta);
    }

    report.radius = radius_from(g, report.cells, free_cells_of(report.trap_space, kind, L));
    return report;
}

PerturbationReport analyze_perturbation(const CellGraph& g, const State& pattern,
                                        const CellSet& h, VarChoice vars, ModelKind kind,
                                        int k) {
    if (h.size() != g.cell_count()) throw std::invalid_argument("cell set size mismatch");
    std::vector<PerturbedVar> selection;
    h.for_each([&](int c) { selection.push_back({c, vars}); });
    return analyze_perturbation(g, pattern, selection, kind, k);
}

RadiusCheckReport propagation_radius_bound_check(const CellGraph& g, ModelKind kind) {
    int L = g.cell_count();
    Network net = build_network(g, kind, 1);
    RadiusCheckReport report;
    for (const auto& p : fixed_points(g, kind, 1).patterns) {
        const State& x = p.state_for(kind);
        for (int cell = 0; cell < L; ++cell) {
            CellSet h(L);
            h.set(cell, true);
            // Closed-form trap space freeing the whole cell: stays within
            // distance 1 of a low cell, distance 2 of a high cell.
            Subspace around = minimal_trap_space_around(g, x, h, kind);
            int around_bound = x.get(cell) ? 2 : 1;
            CellSet allowed = g.ball(h, around_bound);
            if (!free_cells_of(around, kind, L).subset_of(allowed))
                report.witnesses_in_ball = false;

            std::vector<int> positions{cell};
            if (kind == ModelKind::full) positions.push_back(L + cell);
            for (int pos : positions) {
                State y = x.flipped(pos);
                Subspace kap = kappa_net(net, y);
                int radius = radius_from(g, h, free_cells_of(kap, kind, L));
                bool raising_notch = pos < L && !x.get(pos);
                bool dropping_delta = pos >= L && x.get(pos);
                int bound = (raising_notch || dropping_delta) ? 1 : 2;
                ++report.cases;
                if (bound == 1) report.max_radius_raise = std::max(report.max_radius_raise, radius);
                else report.max_radius_drop = std::max(report.max_radius_drop, radius);
                if (radius > bound) report.violations.push_back({x, pos, bound, radius});
            }
        }
    }
    return report;
}

// Gadget layout, one unit (cells named by role):
//
//        I--J          each unit: a triangle D-E-C and a triangle I-J-H
//        |  |           hanging off the chain  B - C - G - H,
//        H--+           with H bridging to the next unit's B.
//       /|
//      G +--[next B]   start: a triangle A1-A2-P with P attached to B.
//      |
//   +--C--D
//   |  |  |
//   B  E--+
//   |
//   P--A1
//   |  |
//   +--A2
//
// In the stable pattern of the threshold-2 model the cells A2, B, D, G, I
// are high and the rest low; flipping P lets the change walk down the
// whole chain, turning C and H high and their high neighbours low.
LadderInstance ladder_counterexample(int units) {
    if (units < 2) throw std::invalid_argument("the chain needs at least two units");
    const int kP = 0, kA1 = 1, kA2 = 2;
    auto base = [](int t) { return 3 + 8 * t; };
    // Per-unit offsets.
    const int oB = 0, oC = 1, oD = 2, oE = 3, oG = 4, oH = 5, oI = 6, oJ = 7;
    int L = 3 + 8 * units;
    std::vector<std::pair<int, int>> edges{{kP, kA1}, {kP, kA2}, {kA1, kA2}, {kP, base(0) + oB}};
    for (int t = 0; t < units; ++t) {
        int b = base(t);
        edges.insert(edges.end(), {{b + oB, b + oC},
                                   {b + oC, b + oD},
                                   {b + oC, b + oE},
                                   {b + oD, b + oE},
                                   {b + oC, b + oG},
                                   {b + oG, b + oH},
                                   {b + oH, b + oI},
                                   {b + oH, b + oJ},
                                   {b + oI, b + oJ}});
        if (t + 1 < units) edges.push_back({b + oH, base(t + 1) + oB});
    }
    LadderInstance inst{CellGraph(L, std::move(edges)), State(L), kP, State(L), {}, 0};

    State& x = inst.pattern;
    x.set(kA2, true);
    for (int t = 0; t < units; ++t) {
        int b = base(t);
        for (int o : {oB, oD, oG, oI}) x.set(b + o, true);
    }

    inst.witness.start = x.flipped(kP);
    auto& flips = inst.witness.flips;
    flips.push_back(kA2);
    for (int t = 0; t < units; ++t) {
        int b = base(t);
        for (int o : {oB, oC, oD, oG, oH, oI}) flips.push_back(b + o);
    }
    inst.far_pattern = inst.witness.endpoint_unchecked();

    CellSet h(L), diff(L);
    h.set(kP, true);
    for (int i = 0; i < L; ++i)
        if (x.get(i) != inst.far_pattern.get(i)) diff.set(i, true);
    diff.set(kP, true); // the flip itself
    inst.reach_distance = 0;
    diff.for_each([&](int c) {
        CellSet single(L);
        single.set(c, true);
        inst.reach_distance = std::max(inst.reach_distance, inst.graph.set_distance(h, single));
    });
    return inst;
}

} // namespace lateral
