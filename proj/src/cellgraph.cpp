#include "lateral/cellgraph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace lateral {

CellGraph::CellGraph(int L, std::vector<std::pair<int, int>> edges, bool allow_disconnected)
    : L_(L) {
    if (L < 1) throw std::invalid_argument("cell count must be positive");
    std::set<std::pair<int, int>> seen;
    for (auto& [a, b] : edges) {
        if (a < 0 || a >= L || b < 0 || b >= L)
            throw std::invalid_argument("edge endpoint out of range");
        if (a == b) throw std::invalid_argument("self-loop on cell " + std::to_string(a + 1));
        if (a > b) std::swap(a, b);
        if (!seen.insert({a, b}).second)
            throw std::invalid_argument("duplicate edge (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
    }
    edges_.assign(seen.begin(), seen.end());
    adj_.assign(static_cast<size_t>(L), {});
    for (auto [a, b] : edges_) {
        adj_[static_cast<size_t>(a)].push_back(b);
        adj_[static_cast<size_t>(b)].push_back(a);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
    if (!allow_disconnected && !connected())
        throw std::invalid_argument("graph is disconnected (pass --allow-disconnected to analyse anyway)");
}

CellGraph CellGraph::from_edges1(int L, const std::vector<std::pair<int, int>>& edges,
                                 bool allow_disconnected) {
    std::vector<std::pair<int, int>> e;
    e.reserve(edges.size());
    for (auto [a, b] : edges) e.push_back({a - 1, b - 1});
    return CellGraph(L, std::move(e), allow_disconnected);
}

CellGraph CellGraph::path(int L) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < L; ++i) e.push_back({i, i + 1});
    return CellGraph(L, std::move(e));
}

CellGraph CellGraph::cycle(int L) {
    if (L < 3) throw std::invalid_argument("cycle graph requires at least 3 cells");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < L; ++i) e.push_back({i, i + 1});
    e.push_back({L - 1, 0});
    return CellGraph(L, std::move(e));
}

CellGraph CellGraph::grid(int rows, int cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("grid dimensions must be positive");
    auto id = [cols](int r, int c) { return r * cols + c; };
    std::vector<std::pair<int, int>> e;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) e.push_back({id(r, c), id(r, c + 1)});
            if (r + 1 < rows) e.push_back({id(r, c), id(r + 1, c)});
        }
    return CellGraph(rows * cols, std::move(e));
}

CellGraph CellGraph::hexgrid(int rows, int cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("hexgrid dimensions must be positive");
    auto id = [cols](int r, int c) { return r * cols + c; };
    std::vector<std::pair<int, int>> e;
    // Rows of bricks, odd rows shifted by half a brick: a cell touches its
    // horizontal neighbours plus two bricks in each adjacent row.
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) e.push_back({id(r, c), id(r, c + 1)});
            if (r + 1 < rows) {
                int c2 = (r % 2 == 0) ? c - 1 : c + 1;
                e.push_back({id(r, c), id(r + 1, c)});
                if (c2 >= 0 && c2 < cols) e.push_back({id(r, c), id(r + 1, c2)});
            }
        }
    return CellGraph(rows * cols, std::move(e));
}

const std::vector<int>& CellGraph::neighbors(int cell) const {
    if (cell < 0 || cell >= L_) throw std::out_of_range("cell index out of range");
    return adj_[static_cast<size_t>(cell)];
}

bool CellGraph::adjacent(int a, int b) const {
    const auto& nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

bool CellGraph::connected() const {
    return static_cast<int>(components().size()) <= 1;
}

CellSet CellGraph::neighbor_set(int cell) const {
    CellSet s(L_);
    for (int j : neighbors(cell)) s.set(j, true);
    return s;
}

CellSet CellGraph::neighborhood_of_set(const CellSet& cells) const {
    if (cells.size() != L_) throw std::invalid_argument("cell set size mismatch");
    CellSet s(L_);
    cells.for_each([&](int i) {
        for (int j : neighbors(i)) s.set(j, true);
    });
    return s;
}

std::vector<CellSet> CellGraph::connected_components_within(const CellSet& cells) const {
    if (cells.size() != L_) throw std::invalid_argument("cell set size mismatch");
    std::vector<CellSet> out;
    CellSet todo = cells;
    while (todo.any()) {
        int start = todo.positions().front();
        CellSet comp(L_);
        std::queue<int> q;
        q.push(start);
        comp.set(start, true);
        todo.set(start, false);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : neighbors(v)) {
                if (todo.get(w)) {
                    todo.set(w, false);
                    comp.set(w, true);
                    q.push(w);
                }
            }
        }
        out.push_back(comp);
    }
    return out;
}

std::vector<CellSet> CellGraph::components() const {
    return connected_components_within(CellSet::ones(L_));
}

int CellGraph::set_distance(const CellSet& a, const CellSet& b) const {
    if (a.size() != L_ || b.size() != L_) throw std::invalid_argument("cell set size mismatch");
    if (a.none() || b.none()) throw std::invalid_argument("set distance requires nonempty sets");
    std::vector<int> dist(static_cast<size_t>(L_), -1);
    std::queue<int> q;
    a.for_each([&](int i) {
        dist[static_cast<size_t>(i)] = 0;
        q.push(i);
    });
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        if (b.get(v)) return dist[static_cast<size_t>(v)];
        for (int w : neighbors(v))
            if (dist[static_cast<size_t>(w)] < 0) {
                dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(v)] + 1;
                q.push(w);
            }
    }
    return -1;
}

int CellGraph::distance(int a, int b) const {
    CellSet sa(L_), sb(L_);
    sa.set(a, true);
    sb.set(b, true);
    return set_distance(sa, sb);
}

CellSet CellGraph::ball(const CellSet& centers, int r) const {
    CellSet cur = centers, all = centers;
    for (int step = 0; step < r; ++step) {
        cur = neighborhood_of_set(cur).minus(all);
        all = all | cur;
        if (cur.none()) break;
    }
    return all;
}

CellGraph CellGraph::from_json_text(const std::string& text, bool allow_disconnected) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed graph JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("L") || !j["L"].is_number_integer())
        throw std::invalid_argument("graph JSON needs an integer field \"L\"");
    if (!j.contains("edges") || !j["edges"].is_array())
        throw std::invalid_argument("graph JSON needs an array field \"edges\"");
    int L = j["L"].get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw std::invalid_argument("each edge must be a pair of integers");
        edges.push_back({e[0].get<int>() - 1, e[1].get<int>() - 1});
    }
    return CellGraph(L, std::move(edges), allow_disconnected);
}

std::string CellGraph::to_json_text() const {
    nlohmann::json j;
    j["L"] = L_;
    auto arr = nlohmann::json::array();
    for (auto [a, b] : edges_) arr.push_back({a + 1, b + 1});
    j["edges"] = arr;
    return j.dump();
}

} // namespace lateral
