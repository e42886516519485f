#include "burning/caterpillar.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>

namespace burning {

bool Root::is_path() const {
    for (size_t j = 0; j < parent.size(); ++j)
        if (parent[j] != static_cast<int>(j)) return false;
    return true;
}

long long PCaterpillar::sum_nv() const {
    long long s = 0;
    for (const Root& r : roots) s += r.nv;
    return s;
}

long long PCaterpillar::sum_h() const {
    long long s = 0;
    for (const Root& r : roots) s += r.h;
    return s;
}

bool same_shape(const PCaterpillar& a, const PCaterpillar& b) {
    if (a.p != b.p || a.t() != b.t() || a.roots.size() != b.roots.size()) return false;
    for (size_t i = 0; i < a.roots.size(); ++i) {
        const Root &ra = a.roots[i], &rb = b.roots[i];
        if (ra.spine_index != rb.spine_index || ra.parent != rb.parent) return false;
    }
    return true;
}

namespace {

// The declared spine is a longest path exactly when every subtree fits the
// margin to both spine ends; a deeper subtree would extend the path.
void check_spine_margin(const Root& r, int t) {
    if (r.spine_index <= 1 || r.spine_index >= t) throw RootAtSpineEnd(r.spine_index);
    int margin = std::min(r.spine_index - 1, t - r.spine_index);
    if (r.h > margin)
        throw InfeasibleParameters("subtree of height " + std::to_string(r.h) +
                                   " at spine position " + std::to_string(r.spine_index) +
                                   " would make the declared spine non-maximal");
}

void finish_root(Root& r, int p) {
    r.nv = static_cast<int>(r.parent.size());
    r.depths.assign(r.parent.size(), 0);
    r.h = 0;
    for (size_t j = 0; j < r.parent.size(); ++j) {
        int pj = r.parent[j];
        if (pj < 0 || pj > static_cast<int>(j))
            throw InfeasibleParameters("subtree parent list is not topologically ordered");
        r.depths[j] = pj == 0 ? 1 : r.depths[pj - 1] + 1;
        r.h = std::max(r.h, r.depths[j]);
    }
    if (r.nv == 0) throw InfeasibleParameters("root without subtree vertices");
    if (r.h > p)
        throw NotAPCaterpillar(r.vertices.empty() ? -1 : r.vertices.back(), r.h);
}

// Assigns underlying ids: spine first, then subtree vertices root by root.
PCaterpillar assemble(int p, int t, std::vector<Root> roots) {
    PCaterpillar pc;
    pc.p = p;
    pc.spine.resize(t);
    for (int i = 0; i < t; ++i) pc.spine[i] = i;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < t; ++i) edges.emplace_back(i, i + 1);
    int next = t;
    std::sort(roots.begin(), roots.end(),
              [](const Root& a, const Root& b) { return a.spine_index < b.spine_index; });
    for (size_t i = 0; i + 1 < roots.size(); ++i)
        if (roots[i].spine_index == roots[i + 1].spine_index)
            throw InfeasibleParameters("two roots share spine position " +
                                       std::to_string(roots[i].spine_index));
    for (Root& r : roots) {
        finish_root(r, p);
        check_spine_margin(r, t);
        r.vertex = r.spine_index - 1;
        r.vertices.resize(r.nv);
        for (int j = 0; j < r.nv; ++j) {
            r.vertices[j] = next++;
            int par = r.parent[j] == 0 ? r.vertex : r.vertices[r.parent[j] - 1];
            edges.emplace_back(par, r.vertices[j]);
        }
    }
    pc.roots = std::move(roots);
    pc.underlying = Tree::from_edges(next, std::move(edges));
    return pc;
}

}  // namespace

PCaterpillar recognize(const Tree& tree, int p) {
    if (p < 0) throw InfeasibleParameters("p must be non-negative");
    PCaterpillar pc;
    pc.p = p;
    pc.underlying = tree;
    if (tree.n == 1) {
        pc.spine = {0};
        return pc;
    }
    int a = tree.bfs_farthest(0);
    int b = tree.bfs_farthest(a);
    if (a > b) std::swap(a, b);
    pc.spine = tree.path_between(a, b);

    int t = pc.t();
    std::vector<int> spine_pos(tree.n, 0);  // 1-based, 0 = off spine
    for (int i = 0; i < t; ++i) spine_pos[pc.spine[i]] = i + 1;

    std::vector<int> slot(tree.n, -1);
    for (int i = 0; i < t; ++i) {
        int v = pc.spine[i];
        bool has_subtree = false;
        for (int w : tree.adj[v])
            if (!spine_pos[w]) has_subtree = true;
        if (!has_subtree) continue;
        if (i == 0 || i == t - 1) throw RootAtSpineEnd(i + 1);
        Root r;
        r.spine_index = i + 1;
        r.vertex = v;
        std::deque<std::pair<int, int>> queue;  // (vertex, parent slot, 1-based)
        for (int w : tree.adj[v])
            if (!spine_pos[w]) queue.emplace_back(w, 0);
        while (!queue.empty()) {
            auto [w, par] = queue.front();
            queue.pop_front();
            r.vertices.push_back(w);
            r.parent.push_back(par);
            int d = par == 0 ? 1 : r.depths[par - 1] + 1;
            r.depths.push_back(d);
            if (d > p) throw NotAPCaterpillar(w, d);
            slot[w] = static_cast<int>(r.vertices.size());
            for (int x : tree.adj[w])
                if (!spine_pos[x] && slot[x] < 0) queue.emplace_back(x, slot[w]);
        }
        r.nv = static_cast<int>(r.vertices.size());
        r.h = *std::max_element(r.depths.begin(), r.depths.end());
        pc.roots.push_back(std::move(r));
    }
    return pc;
}

namespace {

void skip_ws(std::string_view s, size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

int read_int(std::string_view s, size_t& i, const char* what) {
    skip_ws(s, i);
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) throw ParseError(1, std::string("expected ") + what);
    return std::stoi(std::string(s.substr(start, i - start)));
}

void expect(std::string_view s, size_t& i, std::string_view token) {
    skip_ws(s, i);
    if (s.substr(i, token.size()) != token)
        throw ParseError(1, "expected '" + std::string(token) + "'");
    i += token.size();
}

}  // namespace

PCaterpillar parse_compact(std::string_view text) {
    size_t i = 0;
    expect(text, i, "p=");
    int p = read_int(text, i, "p value");
    expect(text, i, ";");
    expect(text, i, "t=");
    int t = read_int(text, i, "t value");
    expect(text, i, ";");
    expect(text, i, "roots=");
    std::vector<Root> roots;
    skip_ws(text, i);
    while (i < text.size()) {
        expect(text, i, "(");
        Root r;
        r.spine_index = read_int(text, i, "root spine index");
        if (r.spine_index < 1 || r.spine_index > t)
            throw ParseError(1, "root index " + std::to_string(r.spine_index) +
                                    " outside the spine 1.." + std::to_string(t));
        expect(text, i, ":");
        skip_ws(text, i);
        if (text.substr(i, 4) == "path") {
            i += 4;
            int len = read_int(text, i, "path length");
            if (len < 1) throw ParseError(1, "path shape needs at least one vertex");
            for (int j = 0; j < len; ++j) r.parent.push_back(j);
        } else if (text.substr(i, 5) == "tree[") {
            i += 5;
            skip_ws(text, i);
            if (i < text.size() && text[i] == ']') {
                ++i;
            } else {
                while (true) {
                    r.parent.push_back(read_int(text, i, "parent entry"));
                    skip_ws(text, i);
                    if (i < text.size() && text[i] == ',') {
                        ++i;
                        continue;
                    }
                    expect(text, i, "]");
                    break;
                }
            }
        } else {
            throw ParseError(1, "unknown subtree shape");
        }
        expect(text, i, ")");
        roots.push_back(std::move(r));
        skip_ws(text, i);
        if (i < text.size() && text[i] == ',') {
            ++i;
            continue;
        }
        break;
    }
    skip_ws(text, i);
    if (i != text.size()) throw ParseError(1, "trailing input");
    try {
        return assemble(p, t, std::move(roots));
    } catch (const NotAPCaterpillar& e) {
        throw ParseError(1, "subtree height " + std::to_string(e.witness_distance) +
                                " exceeds p=" + std::to_string(p));
    } catch (const InfeasibleParameters& e) {
        throw ParseError(1, e.what());
    } catch (const RootAtSpineEnd& e) {
        throw ParseError(1, e.what());
    }
}

std::string emit_compact(const PCaterpillar& pcat) {
    std::ostringstream out;
    out << "p=" << pcat.p << "; t=" << pcat.t() << "; roots=";
    bool first = true;
    for (const Root& r : pcat.roots) {
        if (!first) out << ",";
        first = false;
        out << "(" << r.spine_index << ":";
        if (r.is_path()) {
            out << "path" << r.nv;
        } else {
            out << "tree[";
            for (int j = 0; j < r.nv; ++j) {
                if (j) out << ",";
                out << r.parent[j];
            }
            out << "]";
        }
        out << ")";
    }
    return out.str();
}

SubtreeMode parse_subtree_mode(std::string_view name) {
    if (name == "paths") return SubtreeMode::paths;
    if (name == "bushy") return SubtreeMode::bushy;
    if (name == "mixed") return SubtreeMode::mixed;
    throw InfeasibleParameters("unknown subtree mode '" + std::string(name) + "'");
}

std::string_view subtree_mode_name(SubtreeMode mode) {
    switch (mode) {
        case SubtreeMode::paths: return "paths";
        case SubtreeMode::bushy: return "bushy";
        default: return "mixed";
    }
}

namespace {

// Small deterministic helper so generated instances do not depend on the
// standard library's distribution internals.
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed ^ 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next() {
        s += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // Uniform in [lo, hi].
    int range(int lo, int hi) {
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    bool coin() { return next() & 1; }
};

}  // namespace

PCaterpillar random_caterpillar(int p, int t, int k, SubtreeMode mode, std::uint64_t seed) {
    if (t < 1) throw InfeasibleParameters("t must be positive");
    if (k < 0) throw InfeasibleParameters("k must be non-negative");
    if (k > 0 && p < 1) throw InfeasibleParameters("roots need p >= 1");
    if (k > 0 && t < k + 2)
        throw InfeasibleParameters("spine of length " + std::to_string(t) +
                                   " cannot host " + std::to_string(k) + " interior roots");
    Rng rng(seed);
    std::vector<int> positions;
    if (k > 0) {
        std::vector<bool> used(t + 1, false);
        while (static_cast<int>(positions.size()) < k) {
            int pos = rng.range(2, t - 1);
            if (used[pos]) continue;
            used[pos] = true;
            positions.push_back(pos);
        }
        std::sort(positions.begin(), positions.end());
    }
    std::vector<Root> roots;
    for (int pos : positions) {
        Root r;
        r.spine_index = pos;
        int cap = std::min({p, pos - 1, t - pos});
        int h = rng.range(1, cap);
        bool bushy = mode == SubtreeMode::bushy || (mode == SubtreeMode::mixed && rng.coin());
        std::vector<int> dep;
        for (int d = 0; d < h; ++d) {  // trunk fixes the height
            r.parent.push_back(d);
            dep.push_back(d + 1);
        }
        if (bushy) {
            int extra = h + rng.range(0, h);  // nv = 2h..3h
            for (int e = 0; e < extra; ++e) {
                int par;  // the root (0) or any vertex that is not at full depth
                do {
                    par = rng.range(0, static_cast<int>(r.parent.size()));
                } while (par != 0 && dep[par - 1] >= h);
                r.parent.push_back(par);
                dep.push_back(par == 0 ? 1 : dep[par - 1] + 1);
            }
        }
        roots.push_back(std::move(r));
    }
    return assemble(p, t, std::move(roots));
}

PCaterpillar reversed(const PCaterpillar& pcat) {
    PCaterpillar out = pcat;
    std::reverse(out.spine.begin(), out.spine.end());
    int t = pcat.t();
    for (Root& r : out.roots) r.spine_index = t + 1 - r.spine_index;
    std::reverse(out.roots.begin(), out.roots.end());
    return out;
}

}  // namespace burning
