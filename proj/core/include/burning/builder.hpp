#pragma once

#include <memory>
#include <optional>
#include <string>

#include "burning/burn.hpp"
#include "burning/caterpillar.hpp"
#include "burning/cocoon.hpp"

namespace burning {

// Non-overlapping cover of the whole wrapper spine: radii p..N-1 left to
// right, then the tiny radii p-1..0.  Requires spine_len = N*N with N > p;
// throws NotPerfectSquare otherwise.
Arrangement initial_special_cover(const Wrapper& wrapper);

// The caterpillar with its spine extended on the right until t + sum(nv) is
// a perfect square.  Root data is untouched; original_t remembers where the
// real spine ends.
struct Padded {
    std::shared_ptr<const PCaterpillar> pcat;
    int original_t = 0;
    int original_n = 0;
};

Padded pad_to_square(const PCaterpillar& pcat);

// Counts the non-tiny balls lying entirely inside the right half of the
// wrapper (left endpoint > ceil(L/2)).  For an arrangement that is special
// from its leftmost ball with the canonical radii 0..N-1, the count is at
// least z*p whenever L > 16 z^2 p^2.
struct RightHalfCount {
    int count = 0;
    bool applicable = false;  // the size bound on L holds
    bool holds = false;       // count >= z*p
};

RightHalfCount nontiny_right_half_lower_bound(const Arrangement& arr, int z);

// Tree-covers every pending root lying inside the ball that contains
// x_stage, using weak shifts only, and advances the stage past them.  The
// excess drops by at most one subtree height overall.
struct ClearOutcome {
    Arrangement arr;
    int stage = 0;
    int shifted = 0;  // total shift magnitude spent
};

ClearOutcome clear_roots(const Arrangement& arr, int stage, Trace* trace = nullptr);

enum class Route { trivial, proposition, theorem, exact, greedy };

std::string route_name(Route route);

struct BuildResult {
    CoverCertificate certificate;
    Route route = Route::greedy;
    Trace trace;
    int p = 0;
    int n = 0;
};

// Distinct-radii cover from an inflated canonical path cover of the spine,
// radii p..ceil(sqrt(t))-1+p; applies when the subtree vertex surplus
// n - t is at least 2p*sqrt(t) + p^2, which keeps the largest radius within
// ceil(sqrt(n)) - 1.  Returns nullopt when that threshold fails.
std::optional<CoverCertificate> trivial_cover(const PCaterpillar& pcat);

// Cover with exactly ceil(sqrt(L)) balls (L the padded wrapper length) when
// every subtree is small relative to its vertex count:
// sum(nv_i - 2 h_i) >= p^2 + p.  Runs the stagewise shift construction and
// audits the excess floor p^2 + p + sum_{i>j} h_i at every stage.
BuildResult proposition_cover(const PCaterpillar& pcat);

// Cover with exactly ceil(sqrt(L)) balls for p >= 2 once the padded wrapper
// is large enough (L >= 16 z^2 p^2 with z = 4p^3 + 2p^2 + 4p).  Splits on the
// root count: few roots are jumped over and the tiny block is parked inside
// a root-free gap; many roots are consumed in batches of p via jumps.
BuildResult theorem_cover(const PCaterpillar& pcat);

struct BuildOptions {
    int exact_cap = 64;
};

// Route dispatch: paths go through the proposition machinery (canonical
// cover), then trivial, proposition, theorem, exact search, and finally the
// greedy spine cover, which is always valid but may exceed ceil(sqrt(n))
// balls.
BuildResult build(const PCaterpillar& pcat, const BuildOptions& options = {});

}  // namespace burning
