#include "lateral/trapspaces.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lateral/oracle.hpp"
#include "lateral/patterns.hpp"

namespace lateral {

FreeSplit split_free(const Bits& free_positions, int L) {
    if (free_positions.size() != 2 * L)
        throw std::invalid_argument("full-model free set must have dimension 2L");
    CellSet n(L), d(L);
    free_positions.for_each([&](int p) {
        if (p < L) n.set(p, true);
        else d.set(p - L, true);
    });
    return {n, d};
}

Bits join_free(const FreeSplit& split) {
    int L = split.notch.size();
    if (split.delta.size() != L) throw std::invalid_argument("free split size mismatch");
    Bits f(2 * L);
    split.notch.for_each([&](int c) { f.set(c, true); });
    split.delta.for_each([&](int c) { f.set(L + c, true); });
    return f;
}

namespace {

State notch_block(const State& full_state, int L) {
    State n(L);
    for (int i = 0; i < L; ++i) n.set(i, full_state.get(i));
    return n;
}

std::optional<State> find_representative(const Subspace& s, const std::vector<State>& fps) {
    for (const auto& st : fps)
        if (s.contains(st)) return st;
    return std::nullopt;
}

// Boundary conditions of the reduced model, shared by the membership check
// and the enumerator. x must be a fixed point; I the free cells.
bool reduced_conditions(const CellGraph& g, const State& x, const CellSet& free_cells,
                        int k, std::vector<std::string>* clauses) {
    bool ok = true;
    for (int i = 0; i < g.cell_count(); ++i) {
        if (free_cells.get(i)) continue;
        int free_nbrs = 0, fixed_zero = 0;
        for (int j : g.neighbors(i)) {
            if (free_cells.get(j)) ++free_nbrs;
            else if (!x.get(j)) ++fixed_zero;
        }
        if (free_nbrs == 0) continue; // not on the boundary
        bool cell_ok = x.get(i) ? fixed_zero >= k : fixed_zero + free_nbrs < k;
        if (clauses) {
            std::ostringstream c;
            c << "boundary cell " << i + 1 << " (value " << x.get(i) << "): "
              << fixed_zero << " fixed low neighbour(s), " << free_nbrs
              << " free neighbour(s) -> " << (cell_ok ? "held" : "failed");
            clauses->push_back(c.str());
        }
        if (!cell_ok) {
            ok = false;
            if (!clauses) return false;
        }
    }
    return ok;
}

// Full-model boundary conditions via level counts; valid for every k >= 1.
// x must be a fixed point (n, ~n); only cells with fixed Notch constrain.
bool full_count_conditions(const CellGraph& g, const State& x, const CellSet& free_notch,
                           const CellSet& free_delta, int k, std::vector<std::string>* clauses) {
    int L = g.cell_count();
    bool ok = true;
    for (int i = 0; i < L; ++i) {
        if (free_notch.get(i)) continue;
        int fixed_high_delta = 0, free_delta_nbrs = 0;
        for (int j : g.neighbors(i)) {
            if (free_delta.get(j)) ++free_delta_nbrs;
            else if (x.get(L + j)) ++fixed_high_delta;
        }
        if (free_delta_nbrs == 0) continue;
        bool cell_ok = x.get(i) ? fixed_high_delta >= k
                                : fixed_high_delta + free_delta_nbrs < k;
        if (clauses) {
            std::ostringstream c;
            c << "cell " << i + 1 << " (Notch " << x.get(i) << "): " << fixed_high_delta
              << " fixed high-Delta neighbour(s), " << free_delta_nbrs
              << " free-Delta neighbour(s) -> " << (cell_ok ? "held" : "failed");
            clauses->push_back(c.str());
        }
        if (!cell_ok) {
            ok = false;
            if (!clauses) return false;
        }
    }
    return ok;
}

} // namespace

TrapSpaceCheck is_trap_space_reduced(const CellGraph& g, const Subspace& s, int k) {
    return is_trap_space_reduced(g, s, k, fixed_points(g, ModelKind::reduced, k).states());
}

TrapSpaceCheck is_trap_space_reduced(const CellGraph& g, const Subspace& s, int k,
                                     const std::vector<State>& reduced_fixed_points) {
    if (s.size() != g.cell_count())
        throw std::invalid_argument("subspace must have dimension L for the reduced model");
    TrapSpaceCheck check;
    auto rep = find_representative(s, reduced_fixed_points);
    if (!rep) {
        check.clauses.push_back("no fixed point inside the subspace");
        return check;
    }
    check.representative = rep;
    check.is_trap = reduced_conditions(g, *rep, s.free(), k, &check.clauses);
    return check;
}

TrapSpaceCheck detail::is_trap_space_full_via_counts(const CellGraph& g, const Subspace& s, int k) {
    return is_trap_space_full_via_counts(g, s, k, fixed_points(g, ModelKind::full, k).states());
}

TrapSpaceCheck detail::is_trap_space_full_via_counts(const CellGraph& g, const Subspace& s, int k,
                                                     const std::vector<State>& full_fixed_points) {
    if (s.size() != 2 * g.cell_count())
        throw std::invalid_argument("subspace must have dimension 2L for the full model");
    TrapSpaceCheck check;
    auto rep = find_representative(s, full_fixed_points);
    if (!rep) {
        check.clauses.push_back("no fixed point inside the subspace");
        return check;
    }
    check.representative = rep;
    FreeSplit fs = split_free(s.free(), g.cell_count());
    if (!fs.notch.subset_of(fs.delta)) {
        check.clauses.push_back("a cell has free Notch but fixed Delta");
        return check;
    }
    check.clauses.push_back("free Notch cells all have free Delta");
    check.is_trap = full_count_conditions(g, *rep, fs.notch, fs.delta, k, &check.clauses);
    return check;
}

TrapSpaceCheck is_trap_space_full(const CellGraph& g, const Subspace& s, int k) {
    return is_trap_space_full(g, s, k, fixed_points(g, ModelKind::full, k).states());
}

TrapSpaceCheck is_trap_space_full(const CellGraph& g, const Subspace& s, int k,
                                  const std::vector<State>& full_fixed_points) {
    if (k >= 2) return detail::is_trap_space_full_via_counts(g, s, k, full_fixed_points);
    if (s.size() != 2 * g.cell_count())
        throw std::invalid_argument("subspace must have dimension 2L for the full model");
    int L = g.cell_count();
    TrapSpaceCheck check;
    auto rep = find_representative(s, full_fixed_points);
    if (!rep) {
        check.clauses.push_back("no fixed point inside the subspace");
        return check;
    }
    check.representative = rep;
    State n = notch_block(*rep, L);
    FreeSplit fs = split_free(s.free(), L);

    bool nd_ok = fs.notch.subset_of(fs.delta);
    check.clauses.push_back(std::string("free Notch cells all have free Delta -> ") +
                            (nd_ok ? "held" : "failed"));

    bool lifted_ok = reduced_conditions(g, n, fs.notch, 1, &check.clauses);

    CellSet extra = fs.delta.minus(fs.notch); // cells with only Delta free
    CellSet extra_nbhd = g.neighborhood_of_set(extra);
    bool isolated_ok = !extra_nbhd.intersects(fs.delta);
    bool low_ok = true;
    extra.for_each([&](int j) {
        if (n.get(j)) low_ok = false;
    });
    check.clauses.push_back(std::string("free-Delta-only cells are low and their neighbours ") +
                            "have fixed Delta -> " + ((isolated_ok && low_ok) ? "held" : "failed"));

    bool witness_ok = true;
    extra_nbhd.for_each([&](int i) {
        bool found = false;
        for (int j : g.neighbors(i))
            if (!fs.delta.get(j) && !n.get(j)) found = true;
        if (!found) witness_ok = false;
    });
    check.clauses.push_back(std::string("each neighbour of a free-Delta-only cell keeps a ") +
                            "fixed high-Delta support -> " + (witness_ok ? "held" : "failed"));

    check.is_trap = nd_ok && lifted_ok && isolated_ok && low_ok && witness_ok;
    return check;
}

Subspace project_to_notch(const Subspace& full_subspace, int L) {
    if (full_subspace.size() != 2 * L)
        throw std::invalid_argument("expected a full-model subspace");
    State n(L);
    Bits f(L);
    for (int i = 0; i < L; ++i) {
        n.set(i, full_subspace.base().get(i));
        f.set(i, full_subspace.free().get(i));
    }
    return Subspace(std::move(n), std::move(f));
}

Subspace lift_trap_space(const CellGraph& g, const Subspace& reduced, int k) {
    auto check = is_trap_space_reduced(g, reduced, k);
    if (!check.is_trap)
        throw std::invalid_argument("lift requires a reduced trap space");
    int L = g.cell_count();
    State full(2 * L);
    const State& n = *check.representative;
    for (int i = 0; i < L; ++i) {
        full.set(i, n.get(i));
        full.set(L + i, !n.get(i));
    }
    CellSet i_cells(L);
    reduced.free().for_each([&](int i) { i_cells.set(i, true); });
    return Subspace(std::move(full), join_free({i_cells, i_cells}));
}

Subspace minimal_trap_space_around(const CellGraph& g, const State& fixed_point,
                                   const CellSet& h, ModelKind kind) {
    int L = g.cell_count();
    if (h.size() != L) throw std::invalid_argument("cell set size mismatch");
    Network net = build_network(g, kind, 1);
    net.check_dim(fixed_point);
    if (!net.is_fixed_point(fixed_point))
        throw std::invalid_argument("minimal trap space around a pattern requires a fixed point");
    State n = kind == ModelKind::full ? notch_block(fixed_point, L) : fixed_point;

    CellSet h0(L), h1(L);
    h.for_each([&](int i) { (n.get(i) ? h1 : h0).set(i, true); });
    CellSet kset(L);
    g.neighborhood_of_set(h1).minus(h).for_each([&](int j) {
        if (!n.get(j)) kset.set(j, true);
    });
    CellSet kh0 = kset | h0;
    CellSet jset(L);
    g.neighborhood_of_set(kh0).minus(h).for_each([&](int j) {
        bool all_high = true;
        for (int nb : g.neighbors(j))
            if (!kh0.get(nb) && !n.get(nb)) all_high = false;
        if (all_high) jset.set(j, true);
    });
    CellSet freed = h | kset | jset;
    if (kind == ModelKind::reduced) return Subspace(n, freed);
    return Subspace(fixed_point, join_free({freed, freed}));
}

namespace {

// Can component `pos` take value v somewhere inside the subspace
// (base, free)? Exact for threshold-of-literals updates: evaluate at the
// extremal completion of the free inputs.
bool can_take(const Network& net, const State& base, const Bits& free, int pos, bool v) {
    int L = net.cells();
    if (net.kind() == ModelKind::full && pos >= L) {
        int c = pos - L;
        if (free.get(c)) return true;
        return (!base.get(c)) == v;
    }
    int cell = pos;
    int favorable_fixed = 0, free_inputs = 0;
    for (int j : net.graph().neighbors(cell)) {
        if (net.kind() == ModelKind::full) {
            int dp = net.delta_pos(j);
            if (free.get(dp)) ++free_inputs;
            else if (base.get(dp)) ++favorable_fixed;
        } else {
            if (free.get(j)) ++free_inputs;
            else if (!base.get(j)) ++favorable_fixed;
        }
    }
    int hi_min = favorable_fixed;
    int hi_max = favorable_fixed + free_inputs;
    int deg = net.graph().degree(cell);
    if (net.rule() == NeighborRule::all_neighbors) return v ? hi_max == deg : hi_min < deg;
    return v ? hi_max >= net.k() : hi_min < net.k();
}

} // namespace

Subspace kappa_of_subspace(const Network& net, const Subspace& start) {
    if (start.size() != net.dim()) throw std::invalid_argument("subspace dimension mismatch");
    Bits free = start.free();
    const State& base = start.base();
    bool grew = true;
    while (grew) {
        grew = false;
        for (int p = 0; p < net.dim(); ++p) {
            if (free.get(p)) continue;
            if (can_take(net, base, free, p, !base.get(p))) {
                free.set(p, true);
                grew = true;
            }
        }
    }
    return Subspace(base, free);
}

Subspace kappa_net(const Network& net, const State& x) {
    return kappa_of_subspace(net, Subspace::of_state(x));
}

Subspace kappa(const CellGraph& g, const State& x, ModelKind kind, int k) {
    return kappa_net(build_network(g, kind, k), x);
}

std::vector<Subspace> maximal_trap_spaces(const CellGraph& g, ModelKind kind) {
    int L = g.cell_count();
    if (L < 2) throw std::invalid_argument("maximal trap spaces require at least two cells");
    std::set<Subspace> candidates;
    for (const auto& p : fixed_points(g, ModelKind::reduced, 1).patterns) {
        for (int i = 0; i < L; ++i) {
            if (p.reduced.get(i)) continue;
            CellSet freed = CellSet::ones(L).minus(g.neighbor_set(i));
            freed.set(i, false);
            if (kind == ModelKind::reduced) {
                candidates.insert(Subspace(p.reduced, freed));
            } else {
                candidates.insert(Subspace(p.full, join_free({freed, freed})));
            }
        }
    }
    std::vector<Subspace> all(candidates.begin(), candidates.end());
    std::vector<Subspace> out;
    for (const auto& s : all) {
        bool maximal = true;
        for (const auto& t : all)
            if (t != s && t.contains(s)) maximal = false;
        if (maximal) out.push_back(s);
    }
    std::sort(out.begin(), out.end(), [](const Subspace& a, const Subspace& b) {
        if (a.free_count() != b.free_count()) return a.free_count() < b.free_count();
        return a.str() < b.str();
    });
    return out;
}

std::vector<Subspace> enumerate_trap_spaces(const CellGraph& g, ModelKind kind, int k, int limit) {
    int L = g.cell_count();
    if (L > limit || L > 25)
        throw LimitError("trap-space enumeration: " + std::to_string(L) +
                         " cells exceed the limit " + std::to_string(std::min(limit, 25)));
    std::set<Subspace> found;
    PatternSet ps = fixed_points(g, kind, k);
    uint32_t full_mask = L == 32 ? ~uint32_t{0} : (uint32_t{1} << L) - 1;
    for (const auto& p : ps.patterns) {
        if (kind == ModelKind::reduced) {
            for (uint32_t m = 0;; ++m) {
                CellSet freed = CellSet::from_uint(L, m);
                if (reduced_conditions(g, p.reduced, freed, k, nullptr))
                    found.insert(Subspace(p.reduced, freed));
                if (m == full_mask) break;
            }
        } else {
            for (uint32_t dmask = 0;; ++dmask) {
                CellSet free_delta = CellSet::from_uint(L, dmask);
                // Cells whose boundary condition fails must have free Notch.
                uint32_t required = 0;
                bool feasible = true;
                for (int i = 0; i < L; ++i) {
                    int fixed_high = 0, free_nb = 0;
                    for (int j : g.neighbors(i)) {
                        if (free_delta.get(j)) ++free_nb;
                        else if (p.full.get(L + j)) ++fixed_high;
                    }
                    bool ok = free_nb == 0 ||
                              (p.full.get(i) ? fixed_high >= k : fixed_high + free_nb < k);
                    if (!ok) {
                        if (!free_delta.get(i)) {
                            feasible = false;
                            break;
                        }
                        required |= uint32_t{1} << i;
                    }
                }
                if (feasible) {
                    uint32_t optional = dmask & ~required;
                    uint32_t sub = optional;
                    while (true) {
                        uint32_t nmask = required | sub;
                        found.insert(Subspace(
                            p.full, join_free({CellSet::from_uint(L, nmask), free_delta})));
                        if (sub == 0) break;
                        sub = (sub - 1) & optional;
                    }
                }
                if (dmask == full_mask) break;
            }
        }
    }
    std::vector<Subspace> out(found.begin(), found.end());
    std::sort(out.begin(), out.end(), [](const Subspace& a, const Subspace& b) {
        if (a.free_count() != b.free_count()) return a.free_count() < b.free_count();
        return a.str() < b.str();
    });
    return out;
}

std::string hasse_dot(const std::vector<Subspace>& spaces) {
    std::ostringstream os;
    os << "digraph trap_spaces {\n";
    for (const auto& s : spaces) os << "  \"" << s.str() << "\";\n";
    for (size_t i = 0; i < spaces.size(); ++i) {
        for (size_t j = 0; j < spaces.size(); ++j) {
            if (i == j || !spaces[i].contains(spaces[j]) || spaces[i] == spaces[j]) continue;
            bool immediate = true;
            for (size_t m = 0; m < spaces.size(); ++m) {
                if (m == i || m == j) continue;
                if (spaces[i].contains(spaces[m]) && spaces[m].contains(spaces[j]) &&
                    spaces[m] != spaces[i] && spaces[m] != spaces[j])
                    immediate = false;
            }
            if (immediate)
                os << "  \"" << spaces[i].str() << "\" -> \"" << spaces[j].str() << "\";\n";
        }
    }
    os << "}\n";
    return os.str();
}

} // namespace lateral
