#include "burning/builder.hpp"

#include <algorithm>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "burning/errors.hpp"
#include "burning/lemmas.hpp"

namespace burning {

namespace {

const Root& stage_root(const PCaterpillar& cat, int ordinal) {
    return cat.roots[static_cast<std::size_t>(ordinal - 1)];
}

// Rightmost non-tiny ball whose interval contains the position, -1 when none.
int nontiny_container(const Arrangement& arr, int pos) {
    int p = arr.pcat().p;
    int found = -1;
    for (int i = 0; i < arr.size(); ++i) {
        const SpineBall& b = arr.ball(i);
        if (!b.tiny(p) && b.left() <= pos && pos <= b.right()) found = i;
    }
    return found;
}

// Canonical path cover of the spine with every radius inflated by p, which
// absorbs the hanging subtrees: a subtree vertex at depth d <= p below spine
// position x is within r + p of any center within r of x.
std::vector<VertexBall> inflated_spine_cover(const PCaterpillar& pcat) {
    long long t = pcat.t();
    int m = ceil_isqrt(t);
    std::vector<VertexBall> balls;
    balls.reserve(static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) {
        long long c = std::max<long long>(r + 1, std::min<long long>(1LL * r * r + r + 1, t - r));
        balls.push_back({pcat.spine[static_cast<std::size_t>(c - 1)], r + pcat.p});
    }
    return balls;
}

CoverCertificate checked_cover(const Tree& tree, std::vector<VertexBall> balls, const char* what) {
    std::sort(balls.begin(), balls.end(),
              [](const VertexBall& a, const VertexBall& b) { return a.radius > b.radius; });
    CoverCertificate cert = validate_cover(tree, balls);
    if (!cert.valid) throw InvariantBroken(-1, what);
    return cert;
}

// Ball centers map back to real vertices by clamping to the original spine.
// Every real vertex projects onto the spine at or before original_t, so the
// clamp never increases the distance to anything it must cover.
std::vector<VertexBall> to_tree_cover(const Arrangement& arr, const PCaterpillar& work,
                                      int original_t) {
    std::vector<VertexBall> out;
    out.reserve(static_cast<std::size_t>(arr.size()));
    for (const SpineBall& b : arr.balls()) {
        int s = std::clamp(b.center, 1, original_t);
        out.push_back({work.spine[static_cast<std::size_t>(s - 1)], b.radius});
    }
    return out;
}

BuildResult finish(const PCaterpillar& original, const Padded& pad, const Arrangement& arr,
                   Route route, Trace trace) {
    CoverCertificate cert =
        checked_cover(original.underlying, to_tree_cover(arr, *pad.pcat, pad.original_t),
                      "constructed cover failed validation");
    int want = floor_isqrt(arr.length());
    if (static_cast<int>(cert.balls.size()) != want || cert.max_radius != want - 1)
        throw InvariantBroken(-1, "constructed cover has the wrong shape");
    return {std::move(cert), route, std::move(trace), original.p, original.n()};
}

long long subtree_surplus(const PCaterpillar& pcat) {
    long long have = 0;
    for (const Root& r : pcat.roots) have += r.nv - 2LL * r.h;
    return have;
}

bool proposition_applicable(const PCaterpillar& pcat) {
    if (pcat.k() == 0) return ceil_isqrt(pcat.t()) > pcat.p;
    return subtree_surplus(pcat) >= 1LL * pcat.p * pcat.p + pcat.p;
}

long long theorem_budget(int p) { return 4LL * p * p * p + 2LL * p * p + 4LL * p; }

long long padded_length(const PCaterpillar& pcat) {
    long long raw = pcat.t() + pcat.sum_nv();
    long long x = ceil_isqrt(raw);
    return x * x;
}

bool theorem_applicable(const PCaterpillar& pcat) {
    if (pcat.p < 2) return false;
    long long z = theorem_budget(pcat.p);
    return padded_length(pcat) >= 16LL * z * z * pcat.p * pcat.p;
}

// Tree-covers a right-bad root by pulling the ball directly right of its
// ball leftward; the root sits within h of its ball's right edge, so the
// minimal pull is at most 2h.
ShiftOutcome pull_right(const Arrangement& arr, int stage) {
    const PCaterpillar& cat = arr.pcat();
    RootStatus st = classify_root(arr, stage + 1);
    if (st.kind != RootStatusKind::RightBad)
        throw PreconditionViolated("pull needs a right-bad root");
    int pos = stage_root(cat, stage + 1).spine_index;
    int h = stage_root(cat, stage + 1).h;
    int at = successor_index(arr, st.ball);
    if (at < 0) throw InvariantBroken(stage + 1, "right-bad root's ball has no successor to pull");
    if (arr.ball(at).tiny(cat.p)) throw InvariantBroken(stage + 1, "cannot pull a tiny ball");
    int lmax = std::max(1, arr.ball(at).left() - pos + h);
    for (int ell = 1; ell <= lmax; ++ell) {
        Arrangement cand = shift(arr, at, ell);
        if (classify_root(cand, stage + 1).kind == RootStatusKind::TreeCovered)
            return {std::move(cand), ell};
    }
    throw InvariantBroken(stage + 1, "no pull magnitude tree-covers the root");
}

}  // namespace

Arrangement initial_special_cover(const Wrapper& wrapper) {
    int L = wrapper.spine_len;
    int N = floor_isqrt(L);
    if (1LL * N * N != L) throw NotPerfectSquare(L);
    int p = wrapper.pcat->p;
    if (N <= p)
        throw InfeasibleParameters("wrapper of length " + std::to_string(L) +
                                   " is too short for a cover with radii up to " +
                                   std::to_string(N - 1));
    std::vector<SpineBall> balls;
    balls.reserve(static_cast<std::size_t>(N));
    int frontier = 0;
    for (int r = p; r < N; ++r) {
        balls.push_back({frontier + r + 1, r});
        frontier += 2 * r + 1;
    }
    for (int r = p - 1; r >= 0; --r) {
        balls.push_back({frontier + r + 1, r});
        frontier += 2 * r + 1;
    }
    return Arrangement(wrapper, std::move(balls));
}

Padded pad_to_square(const PCaterpillar& pcat) {
    long long raw = pcat.t() + pcat.sum_nv();
    long long x = ceil_isqrt(raw);
    int extra = static_cast<int>(x * x - raw);
    auto padded = std::make_shared<PCaterpillar>(pcat);
    if (extra > 0) {
        int n0 = pcat.underlying.n;
        std::vector<std::pair<int, int>> edges = pcat.underlying.edges;
        edges.reserve(edges.size() + static_cast<std::size_t>(extra));
        int prev = pcat.spine.back();
        for (int i = 0; i < extra; ++i) {
            edges.emplace_back(prev, n0 + i);
            prev = n0 + i;
        }
        padded->underlying = Tree::from_edges(n0 + extra, std::move(edges));
        padded->spine.reserve(padded->spine.size() + static_cast<std::size_t>(extra));
        for (int i = 0; i < extra; ++i) padded->spine.push_back(n0 + i);
    }
    return {std::move(padded), pcat.t(), pcat.n()};
}

RightHalfCount nontiny_right_half_lower_bound(const Arrangement& arr, int z) {
    int L = arr.length();
    int p = arr.pcat().p;
    int half = (L + 1) / 2;
    RightHalfCount out;
    for (const SpineBall& b : arr.balls())
        if (!b.tiny(p) && b.left() >= half + 1) ++out.count;
    out.applicable = L > 16LL * z * z * p * p;
    out.holds = out.count >= z * p;
    return out;
}

ClearOutcome clear_roots(const Arrangement& arr, int stage, Trace* trace) {
    const PCaterpillar& cat = arr.pcat();
    if (stage < 1 || stage > cat.k())
        throw PreconditionViolated("clearing must start from a just-covered root");
    int anchor = nontiny_container(arr, stage_root(cat, stage).spine_index);
    if (anchor < 0)
        throw PreconditionViolated("clearing needs the last covered root in a non-tiny ball");
    Arrangement cur = arr;
    int eps_in = excess(arr, stage);
    int j = stage;
    int shifted = 0;
    int max_h = 0;
    while (j < cat.k() && stage_root(cat, j + 1).spine_index <= cur.ball(anchor).right()) {
        max_h = std::max(max_h, stage_root(cat, j + 1).h);
        RootStatus st = classify_root(cur, j + 1);
        switch (st.kind) {
            case RootStatusKind::TreeCovered:
                break;
            case RootStatusKind::LeftBad: {
                ShiftOutcome out = apply_weak_left_shift(cur, j);
                cur = std::move(out.arr);
                shifted += out.ell;
                if (trace) record_step(*trace, "shift", j + 1, cur);
                break;
            }
            case RootStatusKind::RightBad: {
                ShiftOutcome out = pull_right(cur, j);
                cur = std::move(out.arr);
                shifted += out.ell;
                if (trace) record_step(*trace, "shift", j + 1, cur);
                break;
            }
            case RootStatusKind::Exposed:
                throw InvariantBroken(j + 1, "pending root is uncovered");
        }
        ++j;
    }
    for (int i = stage; i <= j; ++i)
        if (classify_root(cur, i).kind != RootStatusKind::TreeCovered)
            throw InvariantBroken(i, "cleared root lost its cover");
    if (excess(cur, j) < eps_in - max_h)
        throw InvariantBroken(j, "clearing cost more excess than one subtree height");
    return {std::move(cur), j, shifted};
}

std::string route_name(Route route) {
    switch (route) {
        case Route::trivial: return "trivial";
        case Route::proposition: return "proposition";
        case Route::theorem: return "theorem";
        case Route::exact: return "exact";
        case Route::greedy: return "greedy";
    }
    return "unknown";
}

std::optional<CoverCertificate> trivial_cover(const PCaterpillar& pcat) {
    long long p = pcat.p;
    long long t = pcat.t();
    long long z = pcat.n() - t;
    // z >= 2p*sqrt(t) + p^2 in integer form
    if (z < p * p) return std::nullopt;
    long long d = z - p * p;
    if (d * d < 4 * p * p * t) return std::nullopt;
    CoverCertificate cert = checked_cover(pcat.underlying, inflated_spine_cover(pcat),
                                          "inflated spine cover failed validation");
    if (cert.max_radius + 1 > ceil_isqrt(pcat.n()))
        throw InvariantBroken(-1, "inflated spine cover exceeded the square-root bound");
    return cert;
}

BuildResult proposition_cover(const PCaterpillar& input) {
    long long floor_need = 1LL * input.p * input.p + input.p;
    if (input.k() > 0 && subtree_surplus(input) < floor_need)
        throw PreconditionViolated("subtree surplus sum(nv - 2h) is below p^2 + p");
    if (input.k() == 0) floor_need = 0;  // no roots, no tiny-safety floor to keep
    Padded pad = pad_to_square(input);
    const PCaterpillar& cat = *pad.pcat;
    Arrangement arr = initial_special_cover(build_wrapper(pad.pcat));
    Trace trace;
    int k = cat.k();
    std::vector<long long> suffix_h(static_cast<std::size_t>(k) + 2, 0);
    for (int i = k; i >= 1; --i) suffix_h[i] = suffix_h[i + 1] + stage_root(cat, i).h;
    auto audit = [&](const Arrangement& a, int j) {
        if (excess(a, j) < floor_need + suffix_h[static_cast<std::size_t>(j) + 1])
            throw InvariantBroken(j, "excess fell below the stage floor");
    };
    audit(arr, 0);
    for (int j = 0; j < k; ++j) {
        RootStatus st = classify_root(arr, j + 1);
        switch (st.kind) {
            case RootStatusKind::TreeCovered:
                break;
            case RootStatusKind::LeftBad: {
                ShiftOutcome out = apply_left_shift(arr, j);
                arr = std::move(out.arr);
                record_step(trace, "shift", j + 1, arr);
                break;
            }
            case RootStatusKind::RightBad: {
                ShiftOutcome out = apply_right_shift(arr, j);
                arr = std::move(out.arr);
                record_step(trace, "shift", j + 1, arr);
                break;
            }
            case RootStatusKind::Exposed:
                throw InvariantBroken(j + 1, "pending root is uncovered");
        }
        audit(arr, j + 1);
    }
    return finish(input, pad, arr, Route::proposition, std::move(trace));
}

namespace {

BuildResult theorem_few_roots(const PCaterpillar& input, long long zB) {
    int p = input.p;
    long long Lpad = padded_length(input);
    long long half = (Lpad + 1) / 2;
    int t = input.t();

    // Run on whichever direction puts more subtree weight into the left half
    // of the wrapper; ties keep the input direction.
    long long w_fwd = 0, w_rev = 0;
    for (const Root& rt : input.roots) {
        if (rt.spine_index <= half) w_fwd += rt.h;
        if (t + 1 - rt.spine_index <= half) w_rev += rt.h;
    }
    PCaterpillar oriented = w_rev > w_fwd ? reversed(input) : input;
    Padded pad = pad_to_square(oriented);
    const PCaterpillar& cat = *pad.pcat;
    Arrangement arr = initial_special_cover(build_wrapper(pad.pcat));
    Trace trace;
    int L = arr.length();
    int N = floor_isqrt(L);
    int r = cat.k();

    int b = 0;
    while (b < r && stage_root(cat, b + 1).spine_index <= half) ++b;
    if (b == 0) throw InvariantBroken(0, "no root in the left half after orientation");
    arr = apply_jump_lemma(arr, 0, b);
    record_step(trace, "jumplemma", b, arr);

    // Longest root-free interval in the right half of the wrapper.
    long long g_lo = half + 1, g_hi = L, best = 0, cur_lo = half + 1;
    for (int i = b; i < r; ++i) {
        long long pos = stage_root(cat, i + 1).spine_index;
        if (pos > half && pos - cur_lo > best) {
            best = pos - cur_lo;
            g_lo = cur_lo;
            g_hi = pos - 1;
        }
        if (pos > half) cur_lo = pos + 1;
    }
    if (L + 1 - cur_lo > best) {
        best = L + 1 - cur_lo;
        g_lo = cur_lo;
        g_hi = L;
    }
    long long gap = best;
    if (gap * 2 * r < Lpad - 2 * r)
        throw InvariantBroken(b, "root-free gap shorter than its pigeonhole bound");
    if (gap < 2LL * N + 2LL * p * p)
        throw InvariantBroken(b, "root-free gap too short to park the tiny block");

    // Park the tiny block just right of the gap's midpoint: the first ball
    // boundary past it is where the relocated block starts.
    long long mid = g_lo + (gap + 1) / 2 - 1;
    int straddler = -1;
    for (int i = 0; i < arr.size(); ++i)
        if (arr.ball(i).left() <= mid && mid <= arr.ball(i).right()) straddler = i;
    if (straddler < 0) throw InvariantBroken(b, "gap midpoint is uncovered");
    long long v = arr.ball(straddler).right() > mid ? arr.ball(straddler).right() + 1 : mid + 1;
    bool anchored = false;
    for (int i = 0; i < arr.size(); ++i)
        if (!arr.ball(i).tiny(p) && arr.ball(i).left() == v) anchored = true;
    if (!anchored) throw InvariantBroken(b, "no non-tiny ball starts at the relocation point");
    if (v + 1LL * p * p - 1 > g_hi)
        throw InvariantBroken(b, "tiny block would overrun the gap's second half");
    arr = relocate_tiny_block(arr, static_cast<int>(v));
    record_step(trace, "relocate", b, arr);

    long long budget = 2LL * p * zB;
    if (budget > N) throw InvariantBroken(b, "shift budget exceeds the ball count bound");
    ClearOutcome co = clear_roots(arr, b, &trace);
    arr = std::move(co.arr);
    long long spent = co.shifted;
    int j = co.stage;
    while (j < r) {
        RootStatus st = classify_root(arr, j + 1);
        switch (st.kind) {
            case RootStatusKind::TreeCovered:
                ++j;
                continue;
            case RootStatusKind::LeftBad: {
                ShiftOutcome out = apply_left_shift(arr, j);
                arr = std::move(out.arr);
                spent += out.ell;
                record_step(trace, "shift", j + 1, arr);
                break;
            }
            case RootStatusKind::RightBad: {
                ShiftOutcome out = apply_right_shift(arr, j);
                arr = std::move(out.arr);
                spent += out.ell;
                record_step(trace, "shift", j + 1, arr);
                break;
            }
            case RootStatusKind::Exposed:
                throw InvariantBroken(j + 1, "pending root is uncovered");
        }
        ++j;
    }
    if (excess(arr, r) < 0) throw InvariantBroken(r, "final excess is negative");
    if (spent > budget) throw InvariantBroken(r, "cumulative shift exceeded its budget");
    return finish(input, pad, arr, Route::theorem, std::move(trace));
}

BuildResult theorem_many_roots(const PCaterpillar& input, long long zB) {
    int p = input.p;
    long long q = zB / 2;  // 2p^3 + p^2 + 2p
    long long Lpad = padded_length(input);
    long long half = (Lpad + 1) / 2;
    int t = input.t();

    // Run on whichever direction puts at least q roots into the left half of
    // the wrapper; with r >= 2q one of the two always does.
    long long c_fwd = 0, c_rev = 0;
    for (const Root& rt : input.roots) {
        if (rt.spine_index <= half) ++c_fwd;
        if (t + 1 - rt.spine_index <= half) ++c_rev;
    }
    if (c_fwd < q && c_rev < q)
        throw InvariantBroken(0, "no orientation puts enough roots in the left half");
    PCaterpillar oriented = c_fwd >= q ? input : reversed(input);
    Padded pad = pad_to_square(oriented);
    const PCaterpillar& cat = *pad.pcat;
    Arrangement arr = initial_special_cover(build_wrapper(pad.pcat));
    Trace trace;
    int r = cat.k();

    arr = apply_jump_lemma(arr, 0, static_cast<int>(q));
    record_step(trace, "jumplemma", static_cast<int>(q), arr);
    ClearOutcome co = clear_roots(arr, static_cast<int>(q), &trace);
    arr = std::move(co.arr);
    int j = co.stage;

    bool endgame = false;
    while (j < r && !endgame) {
        if (excess(arr, j) < q - p)
            throw InvariantBroken(j, "excess fell below the batch floor");
        RootStatus st = classify_root(arr, j + 1);
        switch (st.kind) {
            case RootStatusKind::TreeCovered:
                ++j;
                break;
            case RootStatusKind::LeftBad: {
                ShiftOutcome out = apply_left_shift(arr, j);
                arr = std::move(out.arr);
                record_step(trace, "shift", j + 1, arr);
                ++j;
                break;
            }
            case RootStatusKind::RightBad: {
                int zz = static_cast<int>(std::min<long long>(p, r - j));
                if (zz >= 1 && jump_lemma_applicable(arr, j, zz)) {
                    arr = apply_jump_lemma(arr, j, zz);
                    record_step(trace, "jumplemma", j + zz, arr);
                    co = clear_roots(arr, j + zz, &trace);
                    arr = std::move(co.arr);
                    j = co.stage;
                } else {
                    endgame = true;  // too few balls remain on the right for a jump
                }
                break;
            }
            case RootStatusKind::Exposed:
                throw InvariantBroken(j + 1, "pending root is uncovered");
        }
    }
    while (j < r) {
        RootStatus st = classify_root(arr, j + 1);
        switch (st.kind) {
            case RootStatusKind::TreeCovered:
                break;
            case RootStatusKind::LeftBad: {
                ShiftOutcome out = apply_weak_left_shift(arr, j);
                arr = std::move(out.arr);
                record_step(trace, "shift", j + 1, arr);
                break;
            }
            case RootStatusKind::RightBad: {
                ShiftOutcome out = pull_right(arr, j);
                arr = std::move(out.arr);
                record_step(trace, "shift", j + 1, arr);
                break;
            }
            case RootStatusKind::Exposed:
                throw InvariantBroken(j + 1, "pending root is uncovered");
        }
        ++j;
    }
    if (excess(arr, r) < 1LL * p * p + p)
        throw InvariantBroken(r, "final excess below the tiny safety floor");
    return finish(input, pad, arr, Route::theorem, std::move(trace));
}

}  // namespace

BuildResult theorem_cover(const PCaterpillar& input) {
    int p = input.p;
    if (p < 2) throw PreconditionViolated("the large-instance construction needs p >= 2");
    long long zB = theorem_budget(p);
    long long Lpad = padded_length(input);
    long long threshold = 16LL * zB * zB * p * p;
    if (Lpad < threshold) throw BelowSizeThreshold(Lpad, threshold);
    long long N = floor_isqrt(Lpad);
    long long x2 = 2 * zB;
    if (N * (N - 2 * x2) < (2LL * p * p + 1) * x2)
        throw PreconditionViolated("wrapper too small for the relocation budget");

    if (input.k() == 0) {
        Padded pad = pad_to_square(input);
        Arrangement arr = initial_special_cover(build_wrapper(pad.pcat));
        return finish(input, pad, arr, Route::theorem, {});
    }
    if (input.k() < zB) return theorem_few_roots(input, zB);
    return theorem_many_roots(input, zB);
}

BuildResult build(const PCaterpillar& pcat, const BuildOptions& options) {
    if (pcat.k() == 0 && proposition_applicable(pcat)) return proposition_cover(pcat);
    if (pcat.k() > 0) {
        if (auto cert = trivial_cover(pcat))
            return {std::move(*cert), Route::trivial, {}, pcat.p, pcat.n()};
        if (proposition_applicable(pcat)) return proposition_cover(pcat);
        if (theorem_applicable(pcat)) return theorem_cover(pcat);
    }
    if (pcat.n() <= std::min(options.exact_cap, 64)) {
        ExactOptions eo;
        eo.cap = options.exact_cap;
        ExactResult res = exact_burning_number(pcat.underlying, eo);
        CoverCertificate cert = validate_cover(pcat.underlying, res.cover);
        return {std::move(cert), Route::exact, {}, pcat.p, pcat.n()};
    }
    CoverCertificate cert = checked_cover(pcat.underlying, inflated_spine_cover(pcat),
                                          "inflated spine cover failed validation");
    return {std::move(cert), Route::greedy, {}, pcat.p, pcat.n()};
}

}  // namespace burning
