#include "burning/burn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <unordered_set>

#include "burning/errors.hpp"

namespace burning {

int floor_isqrt(long long value) {
    if (value < 0) throw InfeasibleParameters("square root of a negative value");
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(value)));
    while (r * r > value) --r;
    while ((r + 1) * (r + 1) <= value) ++r;
    return static_cast<int>(r);
}

int ceil_isqrt(long long value) {
    int r = floor_isqrt(value);
    return static_cast<long long>(r) * r == value ? r : r + 1;
}

SimulationResult simulate(const Tree& tree, const Schedule& schedule) {
    if (schedule.sources.empty()) throw InfeasibleParameters("schedule has no sources");
    for (int s : schedule.sources)
        if (s < 0 || s >= tree.n)
            throw InfeasibleParameters("source " + std::to_string(s) + " is not a vertex");
    SimulationResult res;
    res.burned_round.assign(tree.n, 0);
    int burned = 0;
    std::vector<int> frontier;
    auto ignite = [&](int v, int round) {
        res.burned_round[v] = round;
        frontier.push_back(v);
        ++burned;
    };
    ignite(schedule.sources[0], 1);
    int round = 1;
    while (burned < tree.n) {
        ++round;
        std::vector<int> next;
        for (int v : frontier)
            for (int w : tree.adj[v])
                if (!res.burned_round[w]) {
                    res.burned_round[w] = round;
                    next.push_back(w);
                    ++burned;
                }
        frontier = std::move(next);
        if (round - 1 < static_cast<int>(schedule.sources.size())) {
            int s = schedule.sources[round - 1];
            if (res.burned_round[s]) throw SourceAlreadyBurned(round, s);
            ignite(s, round);
        }
    }
    res.rounds = round;
    return res;
}

namespace {

void check_ball(const Tree& tree, const VertexBall& ball) {
    if (ball.center < 0 || ball.center >= tree.n)
        throw InfeasibleParameters("ball center " + std::to_string(ball.center) +
                                   " is not a vertex");
    if (ball.radius < 0 || ball.radius >= tree.n)
        throw InfeasibleParameters("ball radius " + std::to_string(ball.radius) +
                                   " outside 0.." + std::to_string(tree.n - 1));
}

// Vertices within the radius, by bounded BFS.
void mark_ball(const Tree& tree, const VertexBall& ball, std::vector<char>& covered) {
    std::vector<int> dist(tree.n, -1);
    std::deque<int> queue{ball.center};
    dist[ball.center] = 0;
    covered[ball.center] = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (dist[v] == ball.radius) continue;
        for (int w : tree.adj[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                covered[w] = 1;
                queue.push_back(w);
            }
    }
}

}  // namespace

CoverCertificate validate_cover(const Tree& tree, const std::vector<VertexBall>& balls) {
    CoverCertificate cert;
    cert.balls = balls;
    std::vector<char> covered(tree.n, 0);
    std::unordered_set<int> radii;
    bool distinct = true;
    for (const VertexBall& b : balls) {
        check_ball(tree, b);
        if (!radii.insert(b.radius).second) distinct = false;
        cert.max_radius = std::max(cert.max_radius, b.radius);
        mark_ball(tree, b, covered);
    }
    for (int v = 0; v < tree.n; ++v)
        if (!covered[v]) cert.uncovered.push_back(v);
    cert.valid = cert.uncovered.empty() && distinct && !balls.empty();
    return cert;
}

Schedule schedule_from_cover(const Tree& tree, const std::vector<VertexBall>& balls) {
    if (balls.empty()) throw InfeasibleParameters("cannot schedule an empty cover");
    std::vector<VertexBall> order = balls;
    std::sort(order.begin(), order.end(),
              [](const VertexBall& a, const VertexBall& b) { return a.radius > b.radius; });
    Schedule sched;
    std::vector<char> burned(tree.n, 0);
    int burned_count = 0;
    std::vector<int> frontier;
    auto ignite = [&](int v) {
        burned[v] = 1;
        frontier.push_back(v);
        ++burned_count;
    };
    for (const VertexBall& ball : order) {
        if (!sched.sources.empty()) {
            std::vector<int> next;
            for (int v : frontier)
                for (int w : tree.adj[v])
                    if (!burned[w]) {
                        burned[w] = 1;
                        next.push_back(w);
                        ++burned_count;
                    }
            frontier = std::move(next);
        }
        int src = ball.center;
        if (burned[src]) {
            src = -1;
            for (int v = 0; v < tree.n; ++v)
                if (!burned[v]) {
                    src = v;
                    break;
                }
            if (src < 0) break;  // everything burned already
        }
        ignite(src);
        sched.sources.push_back(src);
    }
    return sched;
}

// ---------------------------------------------------------------------------
// exact search
// ---------------------------------------------------------------------------

namespace {

struct StateKey {
    std::uint64_t uncovered;
    std::uint32_t remaining;
    bool operator==(const StateKey&) const = default;
};

struct StateKeyHash {
    size_t operator()(const StateKey& k) const {
        std::uint64_t h = k.uncovered * 0x9e3779b97f4a7c15ULL;
        h ^= (h >> 29) ^ (static_cast<std::uint64_t>(k.remaining) << 17);
        return static_cast<size_t>(h * 0xbf58476d1ce4e5b9ULL);
    }
};

struct Searcher {
    const Tree& tree;
    int n;
    bool capacity_prune;
    std::vector<std::vector<int>> dist;        // dist[v][w]
    std::vector<std::vector<std::uint64_t>> ball;  // ball[r][c]
    std::vector<int> best_size;                // per radius, max over centers
    std::vector<std::pair<int, int>> chosen;   // (radius, center) stack
    std::unordered_set<StateKey, StateKeyHash> dead;

    Searcher(const Tree& t, bool prune) : tree(t), n(t.n), capacity_prune(prune) {
        dist.reserve(n);
        for (int v = 0; v < n; ++v) dist.push_back(t.bfs_distances(v));
    }

    void ensure_radius(int r) {
        while (static_cast<int>(ball.size()) <= r) {
            int rad = static_cast<int>(ball.size());
            std::vector<std::uint64_t> row(n, 0);
            int best = 0;
            for (int c = 0; c < n; ++c) {
                std::uint64_t mask = 0;
                for (int v = 0; v < n; ++v)
                    if (dist[c][v] <= rad) mask |= 1ULL << v;
                row[c] = mask;
                best = std::max(best, std::popcount(mask));
            }
            ball.push_back(std::move(row));
            best_size.push_back(best);
        }
    }

    bool search(std::uint64_t uncovered, std::uint32_t remaining) {
        if (!uncovered) return true;
        if (!remaining) return false;
        if (capacity_prune) {
            long long cap = 0;
            for (std::uint32_t m = remaining; m; m &= m - 1)
                cap += best_size[std::countr_zero(m)];
            if (cap < std::popcount(uncovered)) return false;
        }
        StateKey key{uncovered, remaining};
        if (dead.contains(key)) return false;
        int pivot = std::countr_zero(uncovered);
        // largest remaining radius first
        for (int r = 31 - std::countl_zero(remaining); r >= 0; --r) {
            if (!(remaining & (1u << r))) continue;
            for (int c = 0; c < n; ++c) {
                if (dist[c][pivot] > r) continue;
                chosen.emplace_back(r, c);
                if (search(uncovered & ~ball[r][c], remaining & ~(1u << r))) return true;
                chosen.pop_back();
            }
        }
        dead.insert(key);
        return false;
    }
};

}  // namespace

ExactResult exact_burning_number(const Tree& tree, const ExactOptions& options) {
    if (tree.n > 64 || tree.n > options.cap)
        throw SearchCapExceeded(tree.n, std::min(options.cap, 64));
    Searcher s(tree, options.capacity_prune);
    std::uint64_t all = tree.n == 64 ? ~0ULL : (1ULL << tree.n) - 1;
    int kmax = options.limit ? *options.limit : tree.n;
    for (int k = 1; k <= kmax; ++k) {
        s.ensure_radius(k - 1);
        if (options.capacity_prune) {
            long long cap = 0;
            for (int r = 0; r < k; ++r) cap += s.best_size[r];
            if (cap < tree.n) continue;
        }
        s.chosen.clear();
        s.dead.clear();
        if (s.search(all, k == 32 ? ~0u : (1u << k) - 1)) {
            ExactResult res;
            res.b = k;
            std::vector<int> center_of(static_cast<std::size_t>(k), -1);
            for (auto [r, c] : s.chosen) center_of[static_cast<std::size_t>(r)] = c;
            // Radii the search never needed still belong to the certificate;
            // anchor them on the largest ball's center.
            int anchor = std::max(center_of[static_cast<std::size_t>(k - 1)], 0);
            for (int r = k - 1; r >= 0; --r) {
                int c = center_of[static_cast<std::size_t>(r)];
                res.cover.push_back({c < 0 ? anchor : c, r});
            }
            return res;
        }
    }
    throw LimitExceeded(kmax);
}

bool bnc_check(const Tree& tree, const ExactOptions& options) {
    return exact_burning_number(tree, options).b <= ceil_isqrt(tree.n);
}

}  // namespace burning
