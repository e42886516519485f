#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "burning/tree.hpp"

namespace burning {

// A spine vertex with a hanging subtree.
struct Root {
    int spine_index = 0;  // 1-based position on the spine, left to right
    int vertex = -1;      // underlying vertex id
    int h = 0;            // subtree height (max depth over subtree vertices)
    int nv = 0;           // subtree order, the root itself excluded
    // Subtree vertices in BFS order from the root.  parent[j] is 0 when the
    // j-th vertex hangs off the spine root, otherwise the 1-based position of
    // its parent in this list.  depths[j] >= 1 is the distance to the root.
    std::vector<int> parent;
    std::vector<int> vertices;
    std::vector<int> depths;

    bool is_path() const;
};

struct PCaterpillar {
    int p = 0;
    std::vector<int> spine;   // underlying ids v_1..v_t
    std::vector<Root> roots;  // ascending spine_index, all strictly interior
    Tree underlying;

    int t() const { return static_cast<int>(spine.size()); }
    int n() const { return underlying.n; }
    int k() const { return static_cast<int>(roots.size()); }
    long long sum_nv() const;
    long long sum_h() const;
};

// True when the two instances have the same declared shape (p, spine length,
// root positions and subtree structures).  Underlying ids are not compared.
bool same_shape(const PCaterpillar& a, const PCaterpillar& b);

// Finds a maximal path via double BFS (lowest ids on ties, spine oriented
// from the smaller endpoint), hangs every remaining vertex below the nearest
// spine vertex and checks all depths against p.
PCaterpillar recognize(const Tree& tree, int p);

// "p=<int>; t=<int>; roots=(<idx>:<shape>),..." where <shape> is either
// path<H> (a hanging path of H vertices) or tree[<parent list>] with the
// encoding described at Root::parent.
PCaterpillar parse_compact(std::string_view text);
std::string emit_compact(const PCaterpillar& pcat);

enum class SubtreeMode { paths, bushy, mixed };

SubtreeMode parse_subtree_mode(std::string_view name);
std::string_view subtree_mode_name(SubtreeMode mode);

// Deterministic: identical arguments produce identical instances.  Subtree
// heights respect both p and the spine maximality margin, so the declared
// spine is always a longest path.
PCaterpillar random_caterpillar(int p, int t, int k, SubtreeMode mode, std::uint64_t seed);

// Same tree, spine read right to left.
PCaterpillar reversed(const PCaterpillar& pcat);

}  // namespace burning
