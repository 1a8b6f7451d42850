#include "lateral/reach.hpp"

#include <algorithm>
#include <stdexcept>

#include "lateral/oracle.hpp"
#include "lateral/patterns.hpp"
#include "lateral/trapspaces.hpp"

namespace lateral {

std::vector<State> reachable_fixed_points_reduced(const CellGraph& g, const State& x) {
    int L = g.cell_count();
    if (x.size() != L) throw std::invalid_argument("state dimension mismatch");
    CellSet low(L);
    for (int i = 0; i < L; ++i)
        if (!x.get(i)) low.set(i, true);
    auto blocks = g.connected_components_within(low);
    std::vector<State> out;
    for (const auto& p : fixed_points(g, ModelKind::reduced, 1).patterns) {
        bool ok = true;
        for (const auto& block : blocks)
            if (block.subset_of(p.cover)) ok = false; // no low cell kept in this block
        if (ok) out.push_back(p.reduced);
    }
    return out;
}

std::vector<State> reachable_fixed_points_full(const CellGraph& g, const State& y) {
    if (y.size() != 2 * g.cell_count()) throw std::invalid_argument("state dimension mismatch");
    Subspace kap = kappa(g, y, ModelKind::full, 1);
    std::vector<State> out;
    for (const auto& p : fixed_points(g, ModelKind::full, 1).patterns)
        if (kap.contains(p.full)) out.push_back(p.full);
    return out;
}

State corner_state(const CellGraph& g, Corner corner, ModelKind kind) {
    int L = g.cell_count();
    if (kind == ModelKind::reduced) {
        switch (corner) {
        case Corner::all_zeros: return State(L);
        case Corner::all_ones: return State::ones(L);
        default: throw std::invalid_argument("reduced model has only all-zeros/all-ones corners");
        }
    }
    State s(2 * L);
    bool notch = corner == Corner::all_ones || corner == Corner::notch_on_delta_off;
    bool delta = corner == Corner::all_ones || corner == Corner::notch_off_delta_on;
    for (int i = 0; i < L; ++i) {
        s.set(i, notch);
        s.set(L + i, delta);
    }
    return s;
}

namespace {

void append_corner_moves_full(const CellSet& comp, Corner origin, int L,
                              std::vector<int>& flips) {
    std::vector<int> cells = comp.positions();
    auto raise_or_lower_delta = [&] {
        for (int c : cells) flips.push_back(L + c);
    };
    auto raise_notch = [&] {
        for (int c : cells) flips.push_back(c);
    };
    if (comp.count() == 1) {
        // Single isolated cell: its pattern value is Notch 0, Delta 1.
        int c = cells.front();
        switch (origin) {
        case Corner::notch_on_delta_off: flips.push_back(c); flips.push_back(L + c); break;
        case Corner::all_zeros: flips.push_back(L + c); break;
        case Corner::all_ones: flips.push_back(c); break;
        case Corner::notch_off_delta_on: break;
        }
        return;
    }
    // Walk the homogeneous cycle to the (Notch on, Delta off) corner.
    switch (origin) {
    case Corner::notch_on_delta_off:
        break;
    case Corner::all_ones:
        raise_or_lower_delta(); // (1,1) -> (1,0)
        break;
    case Corner::notch_off_delta_on:
        raise_notch();          // (0,1) -> (1,1)
        raise_or_lower_delta(); // -> (1,0)
        break;
    case Corner::all_zeros:
        raise_or_lower_delta(); // (0,0) -> (0,1)
        raise_notch();          // -> (1,1)
        raise_or_lower_delta(); // -> (1,0)
        break;
    }
}

} // namespace

PathWitness witness_homogeneous_to_pattern(const CellGraph& g, const State& pattern,
                                           Corner origin, ModelKind kind) {
    int L = g.cell_count();
    Network net = build_network(g, kind, 1);
    net.check_dim(pattern);
    if (!net.is_fixed_point(pattern))
        throw std::invalid_argument("witness target must be a fixed point");
    PathWitness w;
    w.start = corner_state(g, origin, kind);
    if (kind == ModelKind::reduced) {
        bool from_ones = origin == Corner::all_ones;
        for (int i = 0; i < L; ++i)
            if (pattern.get(i) != from_ones) w.flips.push_back(i);
        return w;
    }
    for (const CellSet& comp : g.components()) {
        append_corner_moves_full(comp, origin, L, w.flips);
        if (comp.count() == 1) continue; // corner moves already reach the pattern
        // Lift of the reduced path from all-ones: each lowered cell flips
        // Notch first, then its Delta follows.
        comp.for_each([&](int i) {
            if (!pattern.get(i)) {
                w.flips.push_back(i);
                w.flips.push_back(L + i);
            }
        });
    }
    return w;
}

PathWitness witness_tree_flips(const CellGraph& g, const State& x, const CellSet& low_set,
                               int kept_cell, const CellSet& to_raise) {
    int L = g.cell_count();
    if (x.size() != L || low_set.size() != L || to_raise.size() != L)
        throw std::invalid_argument("dimension mismatch");
    if (low_set.none() || !low_set.get(kept_cell))
        throw std::invalid_argument("kept cell must belong to the low set");
    low_set.for_each([&](int i) {
        if (x.get(i)) throw std::invalid_argument("low set must be low in the start state");
    });
    if (!to_raise.subset_of(low_set) || to_raise.get(kept_cell))
        throw std::invalid_argument("raised cells must lie in the low set minus the kept cell");
    if (g.connected_components_within(low_set).size() != 1)
        throw std::invalid_argument("low set must induce a connected subgraph");

    // BFS tree rooted at the kept cell (sorted adjacency gives the
    // lowest-index tie-break); raise by decreasing depth.
    std::vector<int> depth(static_cast<size_t>(L), -1);
    std::vector<int> order;
    depth[static_cast<size_t>(kept_cell)] = 0;
    order.push_back(kept_cell);
    for (size_t head = 0; head < order.size(); ++head) {
        int v = order[head];
        for (int u : g.neighbors(v))
            if (low_set.get(u) && depth[static_cast<size_t>(u)] < 0) {
                depth[static_cast<size_t>(u)] = depth[static_cast<size_t>(v)] + 1;
                order.push_back(u);
            }
    }
    std::vector<int> raise = to_raise.positions();
    std::stable_sort(raise.begin(), raise.end(), [&](int a, int b) {
        return depth[static_cast<size_t>(a)] > depth[static_cast<size_t>(b)];
    });
    PathWitness w;
    w.start = x;
    w.flips = std::move(raise);
    return w;
}

PathWitness witness_to_homogeneous_full(const CellGraph& g, const State& x) {
    int L = g.cell_count();
    Network net = build_network(g, ModelKind::full, 1);
    net.check_dim(x);
    Subspace kap = kappa_net(net, x);
    if (!kap.is_full())
        throw std::invalid_argument("state lies in a proper trap space; no path to the corner");

    PathWitness w;
    w.start = x;
    State cur = x;
    auto flip = [&](int pos) {
        w.flips.push_back(pos);
        cur.flip(pos);
    };
    for (const CellSet& comp : g.components()) {
        // Stage 1: raise Delta in low/low cells that are not blocked
        // (blocked: every neighbour keeps Notch high with Delta low).
        CellSet blocked(L);
        comp.for_each([&](int i) {
            if (cur.get(i)) return;
            bool all_quiet = true;
            for (int j : g.neighbors(i))
                if (!cur.get(j) || cur.get(L + j)) all_quiet = false;
            if (all_quiet) blocked.set(i, true);
        });
        comp.for_each([&](int i) {
            if (!cur.get(i) && !cur.get(L + i) && !blocked.get(i)) flip(L + i);
        });
        // Stage 2: raise Notch wherever a neighbour Delta is high.
        comp.for_each([&](int i) {
            if (cur.get(i)) return;
            for (int j : g.neighbors(i))
                if (cur.get(L + j)) {
                    flip(i);
                    return;
                }
        });
        // Stage 3: lower Delta under high Notch; all Delta in the
        // component is now low.
        comp.for_each([&](int i) {
            if (!blocked.get(i) && cur.get(i) && cur.get(L + i)) flip(L + i);
        });
        // Corner moves (components of one cell are already at the corner).
        if (comp.count() == 1) continue;
        bool at_corner = true;
        comp.for_each([&](int i) {
            if (!cur.get(i) || cur.get(L + i)) at_corner = false;
        });
        if (at_corner) continue;
        comp.for_each([&](int i) {
            if (cur.get(i)) flip(i); // -> Notch all low
        });
        comp.for_each([&](int i) { flip(L + i); }); // -> Delta all high
        comp.for_each([&](int i) { flip(i); });     // -> Notch all high
        comp.for_each([&](int i) { flip(L + i); }); // -> Delta all low
    }
    return w;
}

namespace {

bool strong_shape(const CellGraph& g, const State& fp, const Subspace& kap, ModelKind kind) {
    int L = g.cell_count();
    if (!kap.contains(fp)) return false;
    CellSet cells(L);
    if (kind == ModelKind::reduced) {
        kap.free().for_each([&](int p) { cells.set(p, true); });
    } else {
        FreeSplit fs = split_free(kap.free(), L);
        cells = fs.notch | fs.delta;
    }
    // Pairwise non-adjacent free cells pin every free value to the pattern:
    // the trap space holds exactly one pattern. On a connected graph with
    // two or more cells this also rules out the full space.
    return !g.neighborhood_of_set(cells).intersects(cells);
}

} // namespace

namespace {

bool in_basin_net(const Network& net, const State& fp, const State& y, BasinMode mode) {
    const CellGraph& g = net.graph();
    if (net.kind() == ModelKind::reduced && mode == BasinMode::weak) {
        CellSet low(g.cell_count());
        for (int i = 0; i < g.cell_count(); ++i)
            if (!y.get(i)) low.set(i, true);
        for (const auto& block : g.connected_components_within(low)) {
            bool keeps_low = false;
            block.for_each([&](int i) {
                if (!fp.get(i)) keeps_low = true;
            });
            if (!keeps_low) return false;
        }
        return true;
    }
    Subspace kap = kappa_net(net, y);
    if (mode == BasinMode::weak) return kap.contains(fp);
    return strong_shape(g, fp, kap, net.kind());
}

} // namespace

bool in_basin(const CellGraph& g, const State& fp, const State& y, BasinMode mode,
              ModelKind kind) {
    Network net = build_network(g, kind, 1);
    net.check_dim(fp);
    net.check_dim(y);
    if (!net.is_fixed_point(fp))
        throw std::invalid_argument("basin membership requires a fixed point");
    return in_basin_net(net, fp, y, mode);
}

BasinReport basin(const CellGraph& g, const State& fp, BasinMode mode, ModelKind kind,
                  bool enumerate, int limit) {
    BasinReport report;
    report.fixed_point = fp;
    report.mode = mode;
    report.kind = kind;
    if (mode == BasinMode::weak)
        report.predicate = kind == ModelKind::reduced
                               ? "every connected low block of the state keeps a low cell of the pattern"
                               : "the pattern lies in the minimal trap space of the state";
    else
        report.predicate = "the minimal trap space of the state is a proper trap space around the "
                           "pattern whose free cells are pairwise non-adjacent";
    int n = kind == ModelKind::full ? 2 * g.cell_count() : g.cell_count();
    if (enumerate) {
        if (n > limit || n > kHardOracleCap)
            throw LimitError("basin enumeration: dimension " + std::to_string(n) +
                             " exceeds the limit " + std::to_string(std::min(limit, kHardOracleCap)));
        Network net = build_network(g, kind, 1);
        net.check_dim(fp);
        if (!net.is_fixed_point(fp))
            throw std::invalid_argument("basin membership requires a fixed point");
        std::vector<State> members;
        uint64_t count = uint64_t{1} << n;
        for (uint64_t s = 0; s < count; ++s) {
            State y = State::from_uint(n, s);
            if (in_basin_net(net, fp, y, mode)) members.push_back(std::move(y));
        }
        std::sort(members.begin(), members.end());
        report.states = std::move(members);
    }
    return report;
}

} // namespace lateral
