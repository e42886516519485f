#include "burning/lemmas.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "burning/errors.hpp"

namespace burning {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw PreconditionViolated(what);
}

const Root& stage_root(const PCaterpillar& cat, int ordinal) {
    return cat.roots[static_cast<std::size_t>(ordinal - 1)];
}

// Roots x_1..x_stage must still be tree-covered.  The full audit is quadratic
// in the root count over a whole pipeline, so big instances only re-check a
// recent window; the final cover validation catches anything older.
void audit_covered_through(const Arrangement& arr, int stage, const char* which) {
    int lo = arr.pcat().k() > 64 ? std::max(1, stage - 8) : 1;
    for (int i = lo; i <= stage; ++i)
        if (classify_root(arr, i).kind != RootStatusKind::TreeCovered)
            throw InvariantBroken(stage, which);
}

ShiftOutcome left_shift_impl(const Arrangement& arr, int stage, bool special) {
    const PCaterpillar& cat = arr.pcat();
    require(stage >= 0 && stage < cat.k(), "left shift needs a pending root");
    RootStatus st = classify_root(arr, stage + 1);
    require(st.kind == RootStatusKind::LeftBad, "next root must be left-bad in a non-tiny ball");
    int at = st.ball;
    if (special && !is_special_from(arr, at))
        throw PreconditionViolated("arrangement must be special from the left-bad root's ball");
    int h = stage_root(cat, stage + 1).h;
    int eps0 = excess(arr, stage);
    for (int ell = 1; ell <= h; ++ell) {
        Arrangement cand = shift(arr, at, ell);
        if (classify_root(cand, stage + 1).kind != RootStatusKind::TreeCovered) continue;
        if (excess(cand, stage + 1) != eps0 + h - ell)
            throw InvariantBroken(stage + 1, "excess equation violated by left shift");
        if (special && !is_special_from(cand, at))
            throw InvariantBroken(stage + 1, "left shift broke specialness from its ball");
        audit_covered_through(cand, stage, "left shift uncovered an earlier root");
        return {std::move(cand), ell};
    }
    throw InvariantBroken(stage + 1, "no left shift within the subtree height tree-covers the root");
}

// Rightmost non-tiny ball whose interval contains the position, -1 when none.
int rightmost_nontiny_containing(const Arrangement& arr, int pos) {
    int p = arr.pcat().p;
    int found = -1;
    for (int i = 0; i < arr.size(); ++i) {
        const SpineBall& b = arr.ball(i);
        if (!b.tiny(p) && b.left() <= pos && pos <= b.right()) found = i;
    }
    return found;
}

}  // namespace

ShiftOutcome apply_left_shift(const Arrangement& arr, int stage) {
    return left_shift_impl(arr, stage, true);
}

ShiftOutcome apply_weak_left_shift(const Arrangement& arr, int stage) {
    return left_shift_impl(arr, stage, false);
}

ShiftOutcome apply_right_shift(const Arrangement& arr, int stage) {
    const PCaterpillar& cat = arr.pcat();
    require(stage >= 0 && stage < cat.k(), "right shift needs a pending root");
    RootStatus st = classify_root(arr, stage + 1);
    require(st.kind == RootStatusKind::RightBad, "next root must be right-bad in a non-tiny ball");
    int h = stage_root(cat, stage + 1).h;
    int eps0 = excess(arr, stage);
    require(eps0 >= h, "right shift needs excess at least the subtree height");
    int at = successor_index(arr, st.ball);
    require(at >= 0, "right shift needs a ball directly right of the root's ball");
    require(!arr.ball(at).tiny(cat.p), "ball directly right of the root's ball must be non-tiny");
    if (!is_special_from(arr, at))
        throw PreconditionViolated("arrangement must be special from the ball right of the root's ball");
    for (int ell = 1; ell <= 2 * h; ++ell) {
        Arrangement cand = shift(arr, at, ell);
        if (classify_root(cand, stage + 1).kind != RootStatusKind::TreeCovered) continue;
        int eps1 = excess(cand, stage + 1);
        if (eps1 != eps0 + h - ell)
            throw InvariantBroken(stage + 1, "excess equation violated by right shift");
        if (eps1 < 0) throw InvariantBroken(stage + 1, "right shift drove the excess negative");
        if (!is_special_from(cand, at))
            throw InvariantBroken(stage + 1, "right shift broke specialness from its ball");
        audit_covered_through(cand, stage, "right shift uncovered an earlier root");
        return {std::move(cand), ell};
    }
    throw InvariantBroken(stage + 1,
                          "no right shift within twice the subtree height tree-covers the root");
}

namespace {

// Candidate radii for the jump procedure; identifying candidates by radius
// keeps them stable across jumps, since radii are pairwise distinct.
std::vector<int> jump_plan(const Arrangement& arr, int stage, int z) {
    const PCaterpillar& cat = arr.pcat();
    require(z >= 1, "jump lemma needs at least one root to cover");
    require(stage >= 0 && stage + z <= cat.k(), "jump lemma root range out of bounds");
    int p = cat.p;

    TinyRegion tr = tiny_region(arr);
    if (!tr.empty() && (!tr.contiguous || tr.hi != arr.covered_prefix()))
        throw PreconditionViolated("tiny region must sit at the right end of the covered prefix");

    // Admissible entry situations: right-bad or tree-covered with the cover
    // special from the root's ball, or left-bad with the cover special from
    // the ball directly left of it (then the tail from the root's ball is
    // special as well).
    RootStatus first = classify_root(arr, stage + 1);
    int start = -1;
    if (first.kind == RootStatusKind::Exposed)
        throw PreconditionViolated("first root of the jump range is uncovered");
    if (first.kind == RootStatusKind::TreeCovered) {
        start = rightmost_nontiny_containing(arr, stage_root(cat, stage + 1).spine_index);
        require(start >= 0, "first root of the jump range must lie in a non-tiny ball");
        require(is_special_from(arr, start),
                "arrangement must be special from the first root's ball");
    } else if (first.kind == RootStatusKind::RightBad) {
        start = first.ball;
        require(is_special_from(arr, start),
                "arrangement must be special from the first root's ball");
    } else {
        start = first.ball;
        int left = predecessor_index(arr, start);
        require(left >= 0, "left-bad entry needs a ball directly left of the root's ball");
        require(is_special_from(arr, left),
                "arrangement must be special from the ball left of the root's ball");
    }

    std::vector<int> seq = extract_special_sequence(arr, start);
    int last_pos = stage_root(cat, stage + z).spine_index;
    int u = -1;
    for (int s = 0; s < static_cast<int>(seq.size()); ++s) {
        const SpineBall& b = arr.ball(seq[s]);
        if (b.left() <= last_pos && last_pos <= b.right()) {
            u = s;
            break;
        }
    }
    require(u >= 0, "special sequence must reach the last root of the jump range");
    require(u + z * p < static_cast<int>(seq.size()),
            "need z*p non-tiny balls right of the ball containing the last root");
    for (int s = u + 1; s <= u + z * p; ++s)
        require(!arr.ball(seq[s]).tiny(p),
                "need z*p non-tiny balls right of the ball containing the last root");

    std::vector<int> cand_radii;
    cand_radii.reserve(z);
    for (int i = 1; i <= z; ++i) cand_radii.push_back(arr.ball(seq[u + i * p]).radius);
    return cand_radii;
}

}  // namespace

bool jump_lemma_applicable(const Arrangement& arr, int stage, int z) {
    try {
        jump_plan(arr, stage, z);
        return true;
    } catch (const PreconditionViolated&) {
        return false;
    }
}

Arrangement apply_jump_lemma(const Arrangement& arr, int stage, int z) {
    const PCaterpillar& cat = arr.pcat();
    std::vector<int> cand_radii = jump_plan(arr, stage, z);
    int last_pos = stage_root(cat, stage + z).spine_index;

    int eps_in = excess(arr, stage);
    Arrangement cur = arr;
    int cursor = 0;
    int s = stage;
    while (s < stage + z) {
        RootStatus st = classify_root(cur, s + 1);
        if (st.kind == RootStatusKind::TreeCovered) {
            ++s;
            continue;
        }
        if (st.kind == RootStatusKind::Exposed)
            throw InvariantBroken(s + 1, "jump lemma exposed a pending root");
        int target = st.ball;
        if (st.kind == RootStatusKind::LeftBad) {
            target = predecessor_index(cur, st.ball);
            if (target < 0)
                throw InvariantBroken(s + 1, "left-bad root's ball has no ball directly left of it");
        }
        // After the jump the candidate X occupies [land_left, land_right] and
        // the target ball, translated, becomes the ball directly right of X.
        int land_left = cur.ball(target).left();
        int ry = cur.ball(target).radius;
        int chosen = -1;
        while (cursor < z) {
            int land_right = land_left + 2 * cand_radii[cursor];
            bool problematic = false;
            for (int t = s + 1; t <= stage + z && !problematic; ++t) {
                int pos = stage_root(cat, t).spine_index;
                int ht = stage_root(cat, t).h;
                if (pos >= land_left && pos <= land_right && land_right - pos < ht)
                    problematic = true;  // target would be right-bad in X
                int ylo = land_right + 1;
                if (pos >= ylo && pos <= ylo + 2 * ry && pos - ylo < ht)
                    problematic = true;  // target would be left-bad right of X
            }
            if (!problematic) {
                chosen = cursor;
                break;
            }
            ++cursor;
        }
        if (chosen < 0) throw InternalExhaustion("jump lemma ran out of candidate balls");
        int mover = cur.index_of_radius(cand_radii[chosen]);
        cur = jump(cur, mover, target);
        ++cursor;
        if (classify_root(cur, s + 1).kind != RootStatusKind::TreeCovered)
            throw InvariantBroken(s + 1, "jump failed to tree-cover its root");
        ++s;
    }

    for (int t = stage + 1; t <= stage + z; ++t)
        if (classify_root(cur, t).kind != RootStatusKind::TreeCovered)
            throw InvariantBroken(t, "jump lemma left a root uncovered");
    int hsum = 0;
    for (int t = stage + 1; t <= stage + z; ++t) hsum += stage_root(cat, t).h;
    if (excess(cur, stage + z) != eps_in + hsum)
        throw InvariantBroken(stage + z, "jump lemma changed the covered set");
    int wl = rightmost_nontiny_containing(cur, last_pos);
    if (wl < 0) throw InvariantBroken(stage + z, "last root of the jump range lost its ball");
    int after = successor_index(cur, wl);
    if (after < 0 || !is_special_from(cur, after))
        throw InvariantBroken(stage + z, "arrangement not special right of the last root's ball");
    audit_covered_through(cur, stage, "jump lemma uncovered an earlier root");
    return cur;
}

}  // namespace burning
