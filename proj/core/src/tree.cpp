#include "burning/tree.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace burning {

namespace {

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

uint64_t edge_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<uint64_t>(u) << 32) | static_cast<uint32_t>(v);
}

}  // namespace

Tree Tree::from_edges(int n, std::vector<std::pair<int, int>> edges) {
    if (n <= 0) throw NotATree(0, "a tree needs at least one vertex");
    if (static_cast<int>(edges.size()) != n - 1)
        throw NotATree(0, "a tree on " + std::to_string(n) + " vertices needs exactly " +
                              std::to_string(n - 1) + " edges, got " +
                              std::to_string(edges.size()));
    Tree t;
    t.n = n;
    t.adj.assign(n, {});
    DisjointSet ds(n);
    std::unordered_set<uint64_t> seen;
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw NotATree(0, "edge (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") out of the id range 0.." + std::to_string(n - 1));
        if (u == v) throw NotATree(0, "self loop at vertex " + std::to_string(u));
        if (!seen.insert(edge_key(u, v)).second)
            throw NotATree(0, "duplicate edge (" + std::to_string(u) + "," +
                                  std::to_string(v) + ")");
        if (!ds.unite(u, v))
            throw NotATree(0, "edge (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") closes a cycle");
        t.adj[u].push_back(v);
        t.adj[v].push_back(u);
    }
    for (int v = 1; v < n; ++v)
        if (ds.find(v) != ds.find(0)) throw NotATree(0, "graph is disconnected");
    t.edges = std::move(edges);
    for (auto& nb : t.adj) std::sort(nb.begin(), nb.end());
    return t;
}

std::vector<int> Tree::bfs_distances(int src) const {
    std::vector<int> dist(n, -1);
    std::deque<int> queue{src};
    dist[src] = 0;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : adj[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

int Tree::bfs_farthest(int src) const {
    auto dist = bfs_distances(src);
    int best = src;
    for (int v = 0; v < n; ++v)
        if (dist[v] > dist[best]) best = v;
    return best;  // lowest id among ties because of the scan order
}

std::vector<int> Tree::path_between(int src, int dst) const {
    std::vector<int> parent(n, -1);
    std::deque<int> queue{src};
    parent[src] = src;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (v == dst) break;
        for (int w : adj[v])
            if (parent[w] < 0) {
                parent[w] = v;
                queue.push_back(w);
            }
    }
    std::vector<int> path;
    for (int v = dst; v != src; v = parent[v]) path.push_back(v);
    path.push_back(src);
    std::reverse(path.begin(), path.end());
    return path;
}

Tree parse_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    bool have_header = false;
    int declared_n = 0;
    std::vector<std::pair<int, int>> edges;
    int max_id = -1;
    bool saw_any = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;  // blank
        if (!saw_any && first == "n") {
            if (!(ls >> declared_n) || declared_n <= 0)
                throw ParseError(lineno, "bad vertex count in header");
            std::string extra;
            if (ls >> extra) throw ParseError(lineno, "trailing token '" + extra + "'");
            have_header = true;
            saw_any = true;
            continue;
        }
        saw_any = true;
        int u, v;
        try {
            size_t used = 0;
            u = std::stoi(first, &used);
            if (used != first.size()) throw std::invalid_argument(first);
        } catch (const std::exception&) {
            throw ParseError(lineno, "expected a vertex id, got '" + first + "'");
        }
        if (!(ls >> v)) throw ParseError(lineno, "missing second endpoint");
        std::string extra;
        if (ls >> extra) throw ParseError(lineno, "trailing token '" + extra + "'");
        if (u < 0 || v < 0) throw ParseError(lineno, "negative vertex id");
        max_id = std::max({max_id, u, v});
        edges.emplace_back(u, v);
    }
    if (!saw_any) throw ParseError(lineno, "empty input");
    int n = have_header ? declared_n : max_id + 1;
    if (have_header && max_id >= declared_n)
        throw ParseError(0, "vertex id " + std::to_string(max_id) +
                                " exceeds declared count " + std::to_string(declared_n));
    try {
        return Tree::from_edges(n, std::move(edges));
    } catch (const NotATree& e) {
        throw ParseError(0, e.what());
    }
}

std::string emit_edge_list(const Tree& tree) {
    std::ostringstream out;
    out << "n " << tree.n << "\n";
    for (auto [u, v] : tree.edges) out << u << " " << v << "\n";
    return out.str();
}

}  // namespace burning
