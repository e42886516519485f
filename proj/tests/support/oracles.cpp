#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>

#include "burning/burn.hpp"
#include "burning/errors.hpp"
#include "burning/lemmas.hpp"

namespace testsupport {

using namespace burning;

namespace {

bool cover_with_radii(const std::vector<std::vector<int>>& dist, int n, int radius,
                      std::uint64_t covered, std::uint64_t full) {
    if (covered == full) return true;
    if (radius < 0) return false;
    for (int c = 0; c < n; ++c) {
        std::uint64_t next = covered;
        for (int v = 0; v < n; ++v)
            if (dist[c][v] <= radius) next |= std::uint64_t{1} << v;
        if (next != covered && cover_with_radii(dist, n, radius - 1, next, full)) return true;
    }
    return false;
}

}  // namespace

int naive_burning_number(const Tree& tree) {
    if (tree.n > 32) throw std::runtime_error("naive oracle limited to 32 vertices");
    std::vector<std::vector<int>> dist;
    for (int v = 0; v < tree.n; ++v) dist.push_back(tree.bfs_distances(v));
    std::uint64_t full = (std::uint64_t{1} << tree.n) - 1;
    for (int m = 1; m <= tree.n; ++m)
        if (cover_with_radii(dist, tree.n, m - 1, 0, full)) return m;
    return tree.n;
}

namespace {

// Beyer-Hedetniemi successor walk over canonical level sequences, which
// visits every rooted tree on n vertices exactly once.
std::vector<std::vector<int>> rooted_level_sequences(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> level(n);
    std::iota(level.begin(), level.end(), 1);
    while (true) {
        out.push_back(level);
        int p = -1;
        for (int i = n - 1; i >= 0; --i)
            if (level[i] > 2) {
                p = i;
                break;
            }
        if (p < 0) break;
        int q = -1;
        for (int i = p - 1; i >= 0; --i)
            if (level[i] == level[p] - 1) {
                q = i;
                break;
            }
        for (int i = p; i < n; ++i) level[i] = level[i - (p - q)];
    }
    return out;
}

std::string ahu_encoding(const Tree& tree, int v, int parent) {
    std::vector<std::string> parts;
    for (int w : tree.adj[v])
        if (w != parent) parts.push_back(ahu_encoding(tree, w, v));
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (const std::string& part : parts) s += part;
    s += ")";
    return s;
}

std::vector<int> tree_centers(const Tree& tree) {
    int n = tree.n;
    if (n <= 2) {
        std::vector<int> all(n);
        std::iota(all.begin(), all.end(), 0);
        return all;
    }
    std::vector<int> deg(n);
    std::vector<bool> removed(n, false);
    std::vector<int> layer;
    for (int v = 0; v < n; ++v) {
        deg[v] = tree.degree(v);
        if (deg[v] <= 1) layer.push_back(v);
    }
    int remaining = n;
    while (remaining > 2) {
        std::vector<int> next;
        for (int v : layer) {
            removed[v] = true;
            --remaining;
            for (int w : tree.adj[v])
                if (!removed[w] && --deg[w] == 1) next.push_back(w);
        }
        layer = std::move(next);
    }
    std::vector<int> centers;
    for (int v = 0; v < n; ++v)
        if (!removed[v]) centers.push_back(v);
    return centers;
}

}  // namespace

std::vector<Tree> all_free_trees(int n) {
    if (n == 1) return {Tree::from_edges(1, {})};
    std::set<std::string> seen;
    std::vector<Tree> out;
    for (const std::vector<int>& level : rooted_level_sequences(n)) {
        std::vector<std::pair<int, int>> edges;
        for (int i = 1; i < n; ++i) {
            for (int j = i - 1; j >= 0; --j)
                if (level[j] == level[i] - 1) {
                    edges.emplace_back(j, i);
                    break;
                }
        }
        Tree tree = Tree::from_edges(n, std::move(edges));
        std::string key;
        for (int c : tree_centers(tree)) {
            std::string enc = ahu_encoding(tree, c, -1);
            if (key.empty() || enc < key) key = std::move(enc);
        }
        if (seen.insert(key).second) out.push_back(std::move(tree));
    }
    return out;
}

Arrangement random_special_tiling(int p, int N, std::mt19937_64& rng) {
    if (p < 1 || p >= N) throw std::runtime_error("tiling needs 1 <= p < N");
    auto pcat = std::make_shared<PCaterpillar>(
        random_caterpillar(p, N * N, 0, SubtreeMode::paths, rng()));
    std::vector<int> tiny(p);
    std::iota(tiny.begin(), tiny.end(), 0);
    std::shuffle(tiny.begin(), tiny.end(), rng);
    int slot = static_cast<int>(rng() % static_cast<std::uint64_t>(N - p + 1));
    std::vector<int> radii;
    for (int r = p; r < p + slot; ++r) radii.push_back(r);
    radii.insert(radii.end(), tiny.begin(), tiny.end());
    for (int r = p + slot; r < N; ++r) radii.push_back(r);
    std::vector<SpineBall> balls;
    int left = 1;
    for (int r : radii) {
        balls.push_back({left + r, r});
        left += 2 * r + 1;
    }
    return Arrangement(build_wrapper(pcat), std::move(balls));
}

std::vector<int> staged_shift_excesses(const Padded& pad) {
    Arrangement arr = initial_special_cover(build_wrapper(pad.pcat));
    const PCaterpillar& cat = *pad.pcat;
    std::vector<int> eps{excess(arr, 0)};
    for (int j = 0; j < cat.k(); ++j) {
        RootStatus st = classify_root(arr, j + 1);
        switch (st.kind) {
            case RootStatusKind::TreeCovered:
                break;
            case RootStatusKind::LeftBad:
                arr = apply_left_shift(arr, j).arr;
                break;
            case RootStatusKind::RightBad:
                arr = apply_right_shift(arr, j).arr;
                break;
            case RootStatusKind::Exposed:
                throw std::runtime_error("stage left a root exposed");
        }
        eps.push_back(excess(arr, j + 1));
    }
    return eps;
}

namespace {

int root_h(const PCaterpillar& cat, int ordinal) { return cat.roots[ordinal - 1].h; }

bool roots_covered_through(const Arrangement& arr, int through, std::string& why) {
    for (int i = 1; i <= through; ++i) {
        try {
            if (classify_root(arr, i).kind != RootStatusKind::TreeCovered) {
                why = "root " + std::to_string(i) + " no longer tree-covered";
                return false;
            }
        } catch (const Error& e) {
            why = "root " + std::to_string(i) + ": " + e.what();
            return false;
        }
    }
    return true;
}

std::vector<char> coverage_map(const Arrangement& arr) {
    std::vector<char> on(static_cast<std::size_t>(arr.length()) + 1, 0);
    for (const SpineBall& b : arr.balls())
        for (int x = std::max(1, b.left()); x <= std::min(arr.length(), b.right()); ++x)
            on[static_cast<std::size_t>(x)] = 1;
    return on;
}

struct SuiteDriver {
    long long want;
    std::mt19937_64 rng;
    LemmaSuiteStats stats;

    explicit SuiteDriver(long long want_, std::uint64_t seed) : want(want_), rng(seed) {}

    void flag(const std::string& what) {
        ++stats.violations;
        if (stats.notes.size() < 10) stats.notes.push_back(what);
    }

    bool done() const {
        return stats.left >= want && stats.weak >= want && stats.right >= want &&
               stats.jump >= want;
    }

    void check_shift(const Arrangement& before, const ShiftOutcome& out, int j, int h,
                     int ell_max, int special_at, const char* label) {
        if (out.ell < 1 || out.ell > ell_max)
            return flag(std::string(label) + ": magnitude out of range");
        if (excess(out.arr, j + 1) != excess(before, j) + h - out.ell)
            return flag(std::string(label) + ": excess equation violated");
        if (classify_root(out.arr, j + 1).kind != RootStatusKind::TreeCovered)
            return flag(std::string(label) + ": current root not tree-covered");
        std::string why;
        if (!roots_covered_through(out.arr, j, why))
            return flag(std::string(label) + ": " + why);
        if (special_at >= 0 && !is_special_from(out.arr, special_at))
            return flag(std::string(label) + ": specialness lost");
    }

    void check_jump(const Arrangement& before, const Arrangement& after, int j, int z) {
        const PCaterpillar& cat = before.pcat();
        int gain = 0;
        for (int i = j + 1; i <= j + z; ++i) gain += root_h(cat, i);
        if (excess(after, j + z) != excess(before, j) + gain)
            return flag("jump: excess gain not exactly the subtree heights");
        std::string why;
        if (!roots_covered_through(after, j + z, why)) return flag("jump: " + why);
        if (coverage_map(before) != coverage_map(after))
            return flag("jump: covered set changed");
        int pos = cat.roots[j + z - 1].spine_index;
        int container = -1;
        for (int i = 0; i < after.size(); ++i)
            if (!after.ball(i).tiny(cat.p) && after.ball(i).left() <= pos &&
                pos <= after.ball(i).right())
                container = i;
        if (container < 0) return flag("jump: landed root not in a non-tiny ball");
        int next = successor_index(after, container);
        if (next >= 0 && !is_special_from(after, next))
            return flag("jump: not special from the successor ball");
    }

    // One random staged instance; stops early when every counter is full.
    void drive() {
        int p = 1 + static_cast<int>(rng() % 3);
        int t = 40 + static_cast<int>(rng() % 360);
        int k = 2 + static_cast<int>(rng() % 40);
        k = std::min(k, t / 3);
        SubtreeMode modes[] = {SubtreeMode::paths, SubtreeMode::bushy, SubtreeMode::mixed};
        SubtreeMode mode = modes[rng() % 3];
        PCaterpillar base = random_caterpillar(p, t, k, mode, rng());
        Padded pad = pad_to_square(base);
        if (floor_isqrt(build_wrapper(pad.pcat).spine_len) <= p) return;
        Arrangement arr = initial_special_cover(build_wrapper(pad.pcat));
        const PCaterpillar& cat = *pad.pcat;
        int kk = cat.k();
        int j = 0;
        while (j < kk && !done()) {
            if (stats.jump < want && (rng() & 1)) {
                int zmax = std::min(p, kk - j);
                int z = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(zmax));
                if (jump_lemma_applicable(arr, j, z)) {
                    Arrangement after = apply_jump_lemma(arr, j, z);
                    check_jump(arr, after, j, z);
                    ++stats.jump;
                    arr = std::move(after);
                    j += z;
                    continue;
                }
            }
            RootStatus st = classify_root(arr, j + 1);
            int h = root_h(cat, j + 1);
            if (st.kind == RootStatusKind::TreeCovered) {
                ++j;
                continue;
            }
            if (st.kind == RootStatusKind::LeftBad) {
                if (stats.weak < want) {
                    ShiftOutcome out = apply_weak_left_shift(arr, j);
                    check_shift(arr, out, j, h, h, -1, "weak left shift");
                    ++stats.weak;
                }
                try {
                    ShiftOutcome out = apply_left_shift(arr, j);
                    check_shift(arr, out, j, h, h, st.ball, "left shift");
                    if (stats.left < want) ++stats.left;
                    arr = std::move(out.arr);
                } catch (const PreconditionViolated&) {
                    arr = apply_weak_left_shift(arr, j).arr;
                }
                ++j;
                continue;
            }
            if (st.kind == RootStatusKind::RightBad) {
                try {
                    ShiftOutcome out = apply_right_shift(arr, j);
                    check_shift(arr, out, j, h, 2 * h, successor_index(arr, st.ball),
                                "right shift");
                    if (excess(out.arr, j + 1) < 0) flag("right shift: negative excess");
                    if (stats.right < want) ++stats.right;
                    arr = std::move(out.arr);
                    ++j;
                    continue;
                } catch (const PreconditionViolated&) {
                }
                int zmax = std::min(p, kk - j);
                bool jumped = false;
                for (int z = zmax; z >= 1 && !jumped; --z)
                    if (jump_lemma_applicable(arr, j, z)) {
                        Arrangement after = apply_jump_lemma(arr, j, z);
                        check_jump(arr, after, j, z);
                        if (stats.jump < want) ++stats.jump;
                        arr = std::move(after);
                        j += z;
                        jumped = true;
                    }
                if (!jumped) return;  // not enough balls remain; drop the tail
                continue;
            }
            return;  // exposed root: this trajectory is dead
        }
    }
};

}  // namespace

LemmaSuiteStats run_lemma_property_suites(long long want, std::uint64_t seed) {
    SuiteDriver driver(want, seed);
    long long guard = want * 60 + 1000;
    for (long long i = 0; i < guard && !driver.done(); ++i) {
        try {
            driver.drive();
        } catch (const InvariantBroken& e) {
            driver.flag(std::string("invariant: ") + e.what());
        } catch (const PreconditionViolated&) {
        } catch (const RootInTinyRegion&) {
        } catch (const ShiftOffSpine&) {
        } catch (const JumpOffSpine&) {
        } catch (const InternalExhaustion& e) {
            driver.flag(std::string("exhaustion: ") + e.what());
        } catch (const NonPrefixCoverage& e) {
            driver.flag(std::string("coverage: ") + e.what());
        } catch (const AmbiguousSuccessor&) {
        } catch (const InfeasibleParameters&) {
        } catch (const NotPerfectSquare&) {
        }
    }
    if (!driver.done()) driver.flag("generator could not fill every suite");
    return driver.stats;
}

}  // namespace testsupport
