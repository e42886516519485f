#include "burning/cocoon.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <unordered_map>
#include <utility>

#include "burning/errors.hpp"

namespace burning {

Wrapper build_wrapper(std::shared_ptr<const PCaterpillar> pcat) {
    if (!pcat) throw PreconditionViolated("wrapper needs a caterpillar");
    Wrapper w;
    w.spine_len = pcat->t() + pcat->sum_nv();
    w.pcat = std::move(pcat);
    return w;
}

int stage_spine_len(const PCaterpillar& pcat, int stage) {
    if (stage < 0 || stage > pcat.k())
        throw PreconditionViolated("stage " + std::to_string(stage) + " outside 0.." +
                                   std::to_string(pcat.k()));
    int len = pcat.t();
    for (int i = stage; i < pcat.k(); ++i) len += pcat.roots[i].h;
    return len;
}

Cocoon build_cocoon(std::shared_ptr<const PCaterpillar> pcat) {
    Cocoon c;
    c.wrapper = build_wrapper(std::move(pcat));
    const PCaterpillar& cat = *c.wrapper.pcat;
    for (int j = 0; j <= cat.k(); ++j) c.stages.push_back({j, stage_spine_len(cat, j)});
    return c;
}

Arrangement::Arrangement(Wrapper wrapper, std::vector<SpineBall> balls)
    : wrapper_(std::move(wrapper)), balls_(std::move(balls)) {
    if (!wrapper_.pcat) throw PreconditionViolated("arrangement needs a wrapper");
    std::vector<char> seen;
    for (size_t i = 0; i < balls_.size(); ++i) {
        const SpineBall& b = balls_[i];
        if (b.radius < 0) throw InfeasibleParameters("negative ball radius");
        if (b.left() < 1 || b.right() > wrapper_.spine_len)
            throw InfeasibleParameters("ball [" + std::to_string(b.left()) + "-" +
                                       std::to_string(b.right()) + "] off the wrapper spine");
        if (static_cast<size_t>(b.radius) >= seen.size()) seen.resize(b.radius + 1, 0);
        if (seen[b.radius]) throw InfeasibleParameters("duplicate ball radius " +
                                                       std::to_string(b.radius));
        seen[b.radius] = 1;
        if (i > 0 && balls_[i - 1].center > b.center)
            throw InfeasibleParameters("ball centers out of order at list position " +
                                       std::to_string(i));
    }
}

int Arrangement::covered_prefix() const {
    std::vector<std::pair<int, int>> spans;
    spans.reserve(balls_.size());
    for (const SpineBall& b : balls_) spans.emplace_back(b.left(), b.right());
    std::sort(spans.begin(), spans.end());
    int frontier = 0;
    for (const auto& [lo, hi] : spans) {
        if (lo > frontier + 1) throw NonPrefixCoverage(frontier + 1);
        frontier = std::max(frontier, hi);
    }
    return frontier;
}

int Arrangement::index_of_radius(int radius) const {
    for (int i = 0; i < size(); ++i)
        if (balls_[i].radius == radius) return i;
    return -1;
}

int excess(const Arrangement& arr, int stage) {
    return arr.covered_prefix() - stage_spine_len(arr.pcat(), stage);
}

RootStatus classify_root(const Arrangement& arr, int ordinal) {
    const PCaterpillar& cat = arr.pcat();
    if (ordinal < 1 || ordinal > cat.k())
        throw PreconditionViolated("root ordinal " + std::to_string(ordinal) + " outside 1.." +
                                   std::to_string(cat.k()));
    const Root& root = cat.roots[ordinal - 1];
    int pos = root.spine_index;
    int covering = -1;   // rightmost tree-covering ball
    int nontiny = -1;    // rightmost non-tiny containing ball
    bool contained = false;
    for (int i = 0; i < arr.size(); ++i) {
        const SpineBall& b = arr.ball(i);
        if (b.left() > pos || b.right() < pos) continue;
        contained = true;
        if (b.radius - std::abs(b.center - pos) >= root.h) covering = i;
        if (!b.tiny(cat.p)) nontiny = i;
    }
    if (covering >= 0) return {RootStatusKind::TreeCovered, covering};
    if (!contained) return {RootStatusKind::Exposed, -1};
    if (nontiny < 0) throw RootInTinyRegion(pos);
    const SpineBall& b = arr.ball(nontiny);
    if (pos - b.left() < root.h) return {RootStatusKind::LeftBad, nontiny};
    return {RootStatusKind::RightBad, nontiny};
}

namespace {

int unique_match(const Arrangement& arr, int position, bool by_left) {
    int found = -1;
    for (int i = 0; i < arr.size(); ++i) {
        int endpoint = by_left ? arr.ball(i).left() : arr.ball(i).right();
        if (endpoint != position) continue;
        if (found >= 0) throw AmbiguousSuccessor(position);
        found = i;
    }
    return found;
}

void check_index(const Arrangement& arr, int index) {
    if (index < 0 || index >= arr.size())
        throw PreconditionViolated("ball index " + std::to_string(index) + " outside 0.." +
                                   std::to_string(arr.size() - 1));
}

// Greedy successor walk plus the special-sequence conditions; nullopt when
// the arrangement is not special from the start ball.
std::optional<std::vector<int>> try_special(const Arrangement& arr, int start) {
    check_index(arr, start);
    int prefix = arr.covered_prefix();
    std::unordered_map<int, int> by_left;  // left endpoint -> index, -2 when shared
    by_left.reserve(arr.size() * 2);
    for (int i = 0; i < arr.size(); ++i) {
        auto [it, fresh] = by_left.emplace(arr.ball(i).left(), i);
        if (!fresh) it->second = -2;
    }
    std::vector<int> seq{start};
    int frontier = arr.ball(start).right();
    while (frontier < prefix) {
        auto it = by_left.find(frontier + 1);
        if (it == by_left.end()) return std::nullopt;
        if (it->second == -2) throw AmbiguousSuccessor(frontier + 1);
        seq.push_back(it->second);
        frontier = arr.ball(it->second).right();
    }
    int p = arr.pcat().p;
    int last_nontiny = -1;
    int first_tiny = -1, last_tiny = -1;
    for (size_t s = 0; s < seq.size(); ++s) {
        const SpineBall& b = arr.ball(seq[s]);
        if (b.tiny(p)) {
            if (first_tiny < 0) first_tiny = static_cast<int>(s);
            last_tiny = static_cast<int>(s);
            for (const Root& r : arr.pcat().roots)
                if (r.spine_index >= b.left() && r.spine_index <= b.right())
                    return std::nullopt;  // tiny region must be root-free
        } else {
            if (last_nontiny >= 0 && arr.ball(seq[s]).radius <= arr.ball(last_nontiny).radius)
                return std::nullopt;  // radii must increase among non-tiny balls
            last_nontiny = seq[s];
        }
    }
    if (first_tiny >= 0) {
        for (int s = first_tiny; s <= last_tiny; ++s)
            if (!arr.ball(seq[s]).tiny(p)) return std::nullopt;  // tiny block must be contiguous
    }
    return seq;
}

}  // namespace

int successor_index(const Arrangement& arr, int index) {
    check_index(arr, index);
    return unique_match(arr, arr.ball(index).right() + 1, true);
}

int predecessor_index(const Arrangement& arr, int index) {
    check_index(arr, index);
    return unique_match(arr, arr.ball(index).left() - 1, false);
}

bool is_special_from(const Arrangement& arr, int index) {
    return try_special(arr, index).has_value();
}

std::vector<int> extract_special_sequence(const Arrangement& arr, int index) {
    auto seq = try_special(arr, index);
    if (!seq)
        throw PreconditionViolated("arrangement is not special from the ball at index " +
                                   std::to_string(index));
    return *seq;
}

Arrangement shift(const Arrangement& arr, int at_index, int ell) {
    check_index(arr, at_index);
    if (ell < 1) throw PreconditionViolated("shift magnitude must be at least 1");
    std::vector<SpineBall> balls = arr.balls();
    for (int i = at_index; i < arr.size(); ++i) {
        if (balls[i].left() - ell < 1) throw ShiftOffSpine("shift would push a ball past the left end of the spine");
        balls[i].center -= ell;
    }
    return Arrangement(arr.wrap(), std::move(balls));
}

Arrangement jump(const Arrangement& arr, int mover_index, int target_index) {
    check_index(arr, mover_index);
    check_index(arr, target_index);
    if (target_index >= mover_index)
        throw PreconditionViolated("jump target must be left of the moving ball");
    const SpineBall mover = arr.ball(mover_index);
    int width = 2 * mover.radius + 1;
    std::vector<SpineBall> balls;
    balls.reserve(arr.size());
    for (int i = 0; i < target_index; ++i) balls.push_back(arr.ball(i));
    SpineBall landed = mover;
    landed.center = arr.ball(target_index).left() + mover.radius;
    balls.push_back(landed);
    for (int i = target_index; i < mover_index; ++i) {
        SpineBall b = arr.ball(i);
        b.center += width;
        if (b.right() > arr.length()) throw JumpOffSpine("translation would push a ball past the right end of the wrapper");
        balls.push_back(b);
    }
    for (int i = mover_index + 1; i < arr.size(); ++i) balls.push_back(arr.ball(i));
    return Arrangement(arr.wrap(), std::move(balls));
}

TinyRegion tiny_region(const Arrangement& arr) {
    int p = arr.pcat().p;
    std::vector<std::pair<int, int>> spans;
    for (const SpineBall& b : arr.balls())
        if (b.tiny(p)) spans.emplace_back(b.left(), b.right());
    TinyRegion region;
    if (spans.empty()) return region;
    std::sort(spans.begin(), spans.end());
    region.lo = spans.front().first;
    int frontier = region.lo - 1;
    for (const auto& [lo, hi] : spans) {
        if (lo > frontier + 1) region.contiguous = false;
        if (hi > frontier) {
            region.covered += hi - std::max(frontier, lo - 1);
            frontier = hi;
        }
    }
    region.hi = frontier;
    return region;
}

Arrangement relocate_tiny_block(const Arrangement& arr, int v) {
    int p = arr.pcat().p;
    std::vector<int> tiny;
    for (int i = 0; i < arr.size(); ++i)
        if (arr.ball(i).tiny(p)) tiny.push_back(i);
    if (tiny.empty()) throw PreconditionViolated("no tiny balls to relocate");
    for (size_t s = 1; s < tiny.size(); ++s)
        if (tiny[s] != tiny[s - 1] + 1)
            throw PreconditionViolated("tiny balls are not a contiguous list block");
    int width = 0;
    for (size_t s = 0; s < tiny.size(); ++s) {
        if (s > 0 && arr.ball(tiny[s]).left() != arr.ball(tiny[s - 1]).right() + 1)
            throw PreconditionViolated("tiny balls are not position-contiguous");
        width += 2 * arr.ball(tiny[s]).radius + 1;
    }
    if (v < 1 || v > arr.length()) throw PreconditionViolated("relocation start off the spine");
    if (v > arr.ball(tiny.front()).left())
        throw PreconditionViolated("tiny block can only move left");
    bool anchored = false;
    for (int i = 0; i < arr.size(); ++i)
        if (arr.ball(i).left() == v && !arr.ball(i).tiny(p)) anchored = true;
    if (!anchored) throw PreconditionViolated("relocation start must be a ball's left endpoint");

    int before = arr.covered_prefix();
    std::vector<SpineBall> balls;
    balls.reserve(arr.size());
    int at = v;
    for (int idx : tiny) {
        SpineBall b = arr.ball(idx);
        b.center = at + b.radius;
        at = b.right() + 1;
        balls.push_back(b);
    }
    for (int i = 0; i < arr.size(); ++i) {
        if (arr.ball(i).tiny(p)) continue;
        SpineBall b = arr.ball(i);
        if (b.left() >= v) {
            b.center += width;
            if (b.right() > arr.length()) throw JumpOffSpine("translation would push a ball past the right end of the wrapper");
        }
        balls.push_back(b);
    }
    std::stable_sort(balls.begin(), balls.end(),
                     [](const SpineBall& a, const SpineBall& b) { return a.center < b.center; });
    Arrangement out(arr.wrap(), std::move(balls));
    if (out.covered_prefix() != before)
        throw InvariantBroken(-1, "tiny-block relocation changed the covered prefix");
    return out;
}

std::string format_balls(const Arrangement& arr) {
    std::string out;
    for (const SpineBall& b : arr.balls()) {
        out += '[';
        out += std::to_string(b.left());
        if (b.radius > 0) {
            out += '-';
            out += std::to_string(b.right());
        }
        out += ']';
    }
    return out;
}

void record_step(Trace& trace, const std::string& op, int stage, const Arrangement& arr) {
    trace.steps.push_back({op, stage, excess(arr, stage), format_balls(arr)});
}

}  // namespace burning
