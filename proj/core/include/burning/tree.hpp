#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "burning/errors.hpp"

namespace burning {

// An undirected tree with vertex ids 0..n-1.
struct Tree {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adj;

    // Validates connectivity, acyclicity and the id range.
    static Tree from_edges(int n, std::vector<std::pair<int, int>> edges);

    int degree(int v) const { return static_cast<int>(adj[v].size()); }

    // Distances from src to every vertex.
    std::vector<int> bfs_distances(int src) const;

    // Farthest vertex from src, lowest id among ties.
    int bfs_farthest(int src) const;

    // The unique src -> dst path, as a vertex sequence including both ends.
    std::vector<int> path_between(int src, int dst) const;
};

// Text format: optional "n <count>" header line, then one "u v" edge per
// line.  Blank lines and lines starting with '#' are ignored.
Tree parse_edge_list(std::string_view text);

std::string emit_edge_list(const Tree& tree);

}  // namespace burning
