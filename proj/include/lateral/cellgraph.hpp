#pragma once
// Undirected, loop-free cell graphs: the neighbour relation between cells.
// Cells are 0-based internally; every external format (graph JSON, CLI
// arguments, reports) uses 1-based indices.

#include <string>
#include <utility>
#include <vector>

#include "lateral/bits.hpp"

namespace lateral {

class CellGraph {
public:
    // Edges are 0-based pairs. Throws on self-loops, duplicates or
    // out-of-range endpoints; connectivity is checked unless allow_disconnected.
    CellGraph(int L, std::vector<std::pair<int, int>> edges, bool allow_disconnected = false);

    // Convenience for 1-based edge lists (the external convention).
    static CellGraph from_edges1(int L, const std::vector<std::pair<int, int>>& edges,
                                 bool allow_disconnected = false);

    static CellGraph path(int L);
    static CellGraph cycle(int L); // requires L >= 3
    static CellGraph grid(int rows, int cols);
    // Brick-wall lattice; interior cells have six neighbours.
    static CellGraph hexgrid(int rows, int cols);

    int cell_count() const { return L_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int cell) const;
    int degree(int cell) const { return static_cast<int>(neighbors(cell).size()); }
    bool adjacent(int a, int b) const;
    bool connected() const;

    CellSet neighbor_set(int cell) const;
    // Union of S(i) over i in the set; empty set maps to the empty set.
    CellSet neighborhood_of_set(const CellSet& cells) const;
    // Maximal subsets of `cells` whose induced subgraphs are connected,
    // ordered by smallest member.
    std::vector<CellSet> connected_components_within(const CellSet& cells) const;
    std::vector<CellSet> components() const;

    // Min over a in A, b in B of the shortest-path length; -1 encodes
    // "unreachable" (possible only with allow_disconnected graphs).
    int set_distance(const CellSet& a, const CellSet& b) const;
    int distance(int a, int b) const;
    // Cells at distance <= r from the set.
    CellSet ball(const CellSet& centers, int r) const;

    // Graph JSON: {"L": int, "edges": [[int,int],...]}, 1-based.
    static CellGraph from_json_text(const std::string& text, bool allow_disconnected = false);
    std::string to_json_text() const;

private:
    int L_;
    std::vector<std::pair<int, int>> edges_; // normalized (min,max), sorted
    std::vector<std::vector<int>> adj_;      // sorted neighbour lists
};

} // namespace lateral
