#include "lateral/patterns.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace lateral {

namespace {

// Branch on an uncovered edge: its endpoints are the only candidates.
// Generates a superset of the minimal covers; minimality is filtered after.
void cover_dfs(const CellGraph& g, size_t edge_idx, CellSet& chosen, std::set<CellSet>& out) {
    const auto& edges = g.edges();
    while (edge_idx < edges.size() &&
           (chosen.get(edges[edge_idx].first) || chosen.get(edges[edge_idx].second)))
        ++edge_idx;
    if (edge_idx == edges.size()) {
        out.insert(chosen);
        return;
    }
    auto [a, b] = edges[edge_idx];
    chosen.set(a, true);
    cover_dfs(g, edge_idx + 1, chosen, out);
    chosen.set(a, false);
    chosen.set(b, true);
    cover_dfs(g, edge_idx + 1, chosen, out);
    chosen.set(b, false);
}

bool cover_is_minimal(const CellGraph& g, const CellSet& q) {
    // Each chosen vertex must privately cover some edge.
    bool ok = true;
    q.for_each([&](int v) {
        bool has_private = false;
        for (int w : g.neighbors(v))
            if (!q.get(w)) has_private = true;
        if (!has_private) ok = false;
    });
    return ok;
}

} // namespace

std::vector<CellSet> minimal_vertex_covers(const CellGraph& g) {
    std::set<CellSet> candidates;
    CellSet chosen(g.cell_count());
    cover_dfs(g, 0, chosen, candidates);
    std::vector<CellSet> out;
    for (const auto& q : candidates)
        if (cover_is_minimal(g, q)) out.push_back(q);
    std::sort(out.begin(), out.end(), [](const CellSet& a, const CellSet& b) {
        return to_1based(a) < to_1based(b);
    });
    return out;
}

Hypergraph build_hk(const CellGraph& g, int k) {
    if (k < 1) throw std::invalid_argument("threshold k must be at least 1");
    std::set<CellSet> edges;
    for (int i = 0; i < g.cell_count(); ++i) {
        const auto& nb = g.neighbors(i);
        int d = static_cast<int>(nb.size());
        if (d < k) continue;
        // All k-subsets of the neighbourhood.
        std::vector<int> idx(static_cast<size_t>(k));
        for (int t = 0; t < k; ++t) idx[static_cast<size_t>(t)] = t;
        while (true) {
            CellSet e(g.cell_count());
            e.set(i, true);
            for (int t : idx) e.set(nb[static_cast<size_t>(t)], true);
            edges.insert(e);
            int t = k - 1;
            while (t >= 0 && idx[static_cast<size_t>(t)] == d - k + t) --t;
            if (t < 0) break;
            ++idx[static_cast<size_t>(t)];
            for (int u = t + 1; u < k; ++u)
                idx[static_cast<size_t>(u)] = idx[static_cast<size_t>(u - 1)] + 1;
        }
    }
    Hypergraph h;
    h.vertex_count = g.cell_count();
    h.edges.assign(edges.begin(), edges.end());
    return h;
}

namespace {

struct TransversalSearch {
    const CellGraph& g;
    const Hypergraph& h;
    int k;
    CellSet eligible;          // degree >= k
    std::set<CellSet> found;

    bool degree_ok(const CellSet& q) const {
        bool ok = true;
        q.for_each([&](int v) {
            int in_q = static_cast<int>((g.neighbor_set(v) & q).count());
            if (in_q > g.degree(v) - k) ok = false;
        });
        return ok;
    }

    bool hits_all(const CellSet& q) const {
        for (const auto& e : h.edges)
            if (!e.intersects(q)) return false;
        return true;
    }

    void dfs(CellSet& q, CellSet& forbidden) {
        // Find an edge not hit yet.
        const CellSet* open = nullptr;
        for (const auto& e : h.edges)
            if (!e.intersects(q)) {
                open = &e;
                break;
            }
        if (!open) {
            if (degree_ok(q)) found.insert(q);
            return;
        }
        CellSet candidates = (*open & eligible).minus(forbidden);
        CellSet local_forbidden = forbidden;
        std::vector<int> vs = candidates.positions();
        for (int v : vs) {
            q.set(v, true);
            // Adding v can only tighten degree counts; prune on violation
            // at v or any chosen neighbour.
            bool ok = static_cast<int>((g.neighbor_set(v) & q).count()) <= g.degree(v) - k;
            if (ok)
                for (int w : g.neighbors(v))
                    if (q.get(w) && static_cast<int>((g.neighbor_set(w) & q).count()) > g.degree(w) - k)
                        ok = false;
            if (ok) dfs(q, local_forbidden);
            q.set(v, false);
            local_forbidden.set(v, true);
        }
    }
};

} // namespace

std::vector<CellSet> k_minimal_transversals(const Hypergraph& h, const CellGraph& g, int k) {
    if (h.vertex_count != g.cell_count())
        throw std::invalid_argument("hypergraph/graph size mismatch");
    CellSet eligible(g.cell_count());
    for (int v = 0; v < g.cell_count(); ++v)
        if (g.degree(v) >= k) eligible.set(v, true);
    TransversalSearch search{g, h, k, eligible, {}};
    CellSet q(g.cell_count()), forbidden(g.cell_count());
    search.dfs(q, forbidden);
    std::vector<CellSet> out;
    for (const auto& t : search.found)
        if (search.hits_all(t) && search.degree_ok(t)) out.push_back(t);
    std::sort(out.begin(), out.end(), [](const CellSet& a, const CellSet& b) {
        return to_1based(a) < to_1based(b);
    });
    return out;
}

PatternSet fixed_points(const CellGraph& g, ModelKind kind, int k) {
    if (k < 1) throw std::invalid_argument("threshold k must be at least 1");
    std::vector<CellSet> highs;
    if (k == 1) {
        highs = minimal_vertex_covers(g);
    } else {
        Hypergraph h = build_hk(g, k);
        highs = k_minimal_transversals(h, g, k);
    }
    int L = g.cell_count();
    PatternSet ps;
    for (const auto& q : highs) {
        State reduced(L);
        q.for_each([&](int i) { reduced.set(i, true); });
        State full(2 * L);
        for (int i = 0; i < L; ++i) {
            full.set(i, reduced.get(i));
            full.set(L + i, !reduced.get(i));
        }
        ps.patterns.push_back({q, std::move(reduced), std::move(full)});
    }
    std::sort(ps.patterns.begin(), ps.patterns.end(),
              [](const Pattern& a, const Pattern& b) { return a.reduced < b.reduced; });
    ps.kind = kind;
    return ps;
}

} // namespace lateral
