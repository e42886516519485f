#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <memory>
#include <random>
#include <string>

#include "burning/builder.hpp"
#include "burning/caterpillar.hpp"
#include "burning/cocoon.hpp"
#include "burning/errors.hpp"
#include "burning/lemmas.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace burning;

namespace {

std::shared_ptr<const PCaterpillar> instance(const std::string& compact) {
    return std::make_shared<PCaterpillar>(parse_compact(compact));
}

std::shared_ptr<const PCaterpillar> path(int n) {
    return std::make_shared<PCaterpillar>(random_caterpillar(0, n, 0, SubtreeMode::paths, 1));
}

// t-spine with `count` single-leaf roots starting at spine position `first`.
std::string leafy(int p, int t, int first, int count, const std::string& kind = "path1") {
    std::string s = "p=" + std::to_string(p) + ";t=" + std::to_string(t) + ";roots=";
    for (int i = 0; i < count; ++i) {
        if (i) s += ',';
        s += "(" + std::to_string(first + i) + ":" + kind + ")";
    }
    return s;
}

}  // namespace

TEST_CASE("initial cover tiles the wrapper with increasing radii then tiny ones") {
    auto four = instance("p=1;t=11;roots=(3:tree[0,0,0]),(5:path1),(7:path1)");
    Arrangement a = initial_special_cover(build_wrapper(four));
    REQUIRE(a.size() == 4);
    CHECK(a.ball(0).center == 2);
    CHECK(a.ball(1).center == 6);
    CHECK(a.ball(2).center == 12);
    CHECK(a.ball(3).center == 16);
    CHECK(a.ball(3).radius == 0);
    CHECK(excess(a, 0) == 2);  // prefix 16 against stage-0 spine length 14
    CHECK(is_special_from(a, 0));

    auto five = instance("p=1;t=23;roots=(3:path1),(5:path1)");
    Arrangement b = initial_special_cover(build_wrapper(five));
    REQUIRE(b.size() == 5);
    CHECK(b.ball(3).center == 20);
    CHECK(b.ball(3).radius == 4);
    CHECK(b.ball(4).center == 25);

    // p = 2 puts two tiny balls on the right.
    auto ptwo = instance("p=2;t=12;roots=(3:path2),(6:path2)");
    Arrangement c = initial_special_cover(build_wrapper(ptwo));
    REQUIRE(c.size() == 4);
    CHECK(c.ball(0).radius == 2);
    CHECK(c.ball(1).radius == 3);
    CHECK(c.ball(2).center == 14);
    CHECK(c.ball(2).radius == 1);
    CHECK(c.ball(3).center == 16);
    CHECK(c.ball(3).radius == 0);

    Arrangement single = initial_special_cover(build_wrapper(path(1)));
    CHECK(single.size() == 1);
    CHECK(single.ball(0).radius == 0);

    auto notsquare = instance("p=1;t=12;roots=(3:path1),(5:path1)");
    CHECK_THROWS_AS(initial_special_cover(build_wrapper(notsquare)), NotPerfectSquare);
    auto tooshort = std::make_shared<PCaterpillar>(
        random_caterpillar(2, 4, 0, SubtreeMode::paths, 1));
    CHECK_THROWS_AS(initial_special_cover(build_wrapper(tooshort)), InfeasibleParameters);
}

TEST_CASE("padding extends the spine to the next square") {
    PCaterpillar twelve = parse_compact("p=1;t=8;roots=(3:path1),(4:path1),(5:path1),(6:path1)");
    Padded pad = pad_to_square(twelve);
    CHECK(pad.original_t == 8);
    CHECK(pad.original_n == 12);
    CHECK(pad.pcat->t() == 12);
    CHECK(pad.pcat->n() == 16);
    CHECK(pad.pcat->k() == 4);
    CHECK(pad.pcat->roots[0].spine_index == 3);
    CHECK(build_wrapper(pad.pcat).spine_len == 16);

    // Already square: untouched.
    PCaterpillar square = parse_compact("p=1;t=11;roots=(3:tree[0,0,0]),(5:path1),(7:path1)");
    Padded same = pad_to_square(square);
    CHECK(same.pcat->t() == 11);
    CHECK(same.pcat->n() == 16);

    PCaterpillar fifty = parse_compact("p=1;t=48;roots=(3:path1),(5:path1)");
    Padded big = pad_to_square(fifty);
    CHECK(big.pcat->t() == 62);
    CHECK(big.pcat->n() == 64);
    CHECK(big.original_n == 50);
}

TEST_CASE("trivial route applies exactly at its surplus threshold") {
    // z = 7 leaves on t = 9 meets (z - p^2)^2 >= 4 p^2 t with equality.
    auto yes = instance(leafy(1, 9, 2, 7));
    std::optional<CoverCertificate> cert = trivial_cover(*yes);
    REQUIRE(cert.has_value());
    CHECK(cert->valid);
    CHECK(cert->balls.size() == 3);
    CHECK(cert->max_radius == 3);
    CHECK(cert->max_radius <= ceil_isqrt(yes->n()) - 1);

    auto no = instance(leafy(1, 9, 2, 6));
    CHECK_FALSE(trivial_cover(*no).has_value());

    // p = 2: 22 hanging 2-paths on t = 100, again boundary-tight.
    auto big = instance(leafy(2, 100, 3, 22, "path2"));
    REQUIRE(big->n() == 144);
    std::optional<CoverCertificate> wide = trivial_cover(*big);
    REQUIRE(wide.has_value());
    CHECK(wide->valid);
    CHECK(wide->balls.size() == 10);
    CHECK(wide->max_radius == 11);
}

TEST_CASE("staged construction keeps the excess floor") {
    auto bushy = instance("p=1;t=12;roots=(4:tree[0,0,0,0]),(6:tree[0,0,0,0]),(8:tree[0,0,0,0])");
    BuildResult res = proposition_cover(*bushy);
    CHECK(res.route == Route::proposition);
    CHECK(res.certificate.valid);
    CHECK(res.certificate.balls.size() == 5);  // padded wrapper is 25
    CHECK(res.certificate.max_radius == 4);
    CHECK(res.trace.steps.size() >= 1);
    CHECK(res.trace.steps[0].op == "shift");

    // Independent stagewise replay of the same construction.
    std::vector<int> eps = testsupport::staged_shift_excesses(pad_to_square(*bushy));
    REQUIRE(eps.size() == 4);
    CHECK(eps[0] == 9);
    for (int e : eps) CHECK(e >= 0);
    CHECK(eps.back() >= 2);  // p^2 + p survives to the last stage

    // Bare paths go through the same construction with no stages.
    BuildResult p49 = proposition_cover(*path(49));
    CHECK(p49.certificate.valid);
    CHECK(p49.certificate.balls.size() == 7);
    CHECK(p49.certificate.max_radius == 6);

    // p = 2 with a single 10-vertex subtree of height 2: surplus is exactly
    // p^2 + p = 6.
    auto deep = instance("p=2;t=12;roots=(6:tree[0,0,0,0,1,1,1,2,2,3])");
    BuildResult two = proposition_cover(*deep);
    CHECK(two.certificate.valid);
    CHECK(two.certificate.balls.size() == 5);

    // Below the surplus floor the route refuses.
    auto thin = instance("p=1;t=14;roots=(3:path1),(5:path1)");
    CHECK_THROWS_AS(proposition_cover(*thin), PreconditionViolated);
}

TEST_CASE("clearing roots inside one ball") {
    // After the jump both roots sit inside the landed ball; clearing skips
    // covered ones and spends nothing.
    auto both = instance("p=1;t=62;roots=(3:path1),(7:path1)");
    Arrangement a = apply_jump_lemma(initial_special_cover(build_wrapper(both)), 0, 2);
    ClearOutcome idle = clear_roots(a, 1);
    CHECK(idle.stage == 2);
    CHECK(idle.shifted == 0);

    // x_2 on the right edge of the landed ball needs a pull of two.
    auto edge = instance("p=1;t=62;roots=(3:path1),(5:path1)");
    Arrangement mid = apply_jump_lemma(initial_special_cover(build_wrapper(edge)), 0, 1);
    REQUIRE(classify_root(mid, 2).kind == RootStatusKind::RightBad);
    ClearOutcome pull = clear_roots(mid, 1);
    CHECK(pull.stage == 2);
    CHECK(pull.shifted == 2);
    CHECK(classify_root(pull.arr, 2).kind == RootStatusKind::TreeCovered);
    CHECK(excess(pull.arr, 2) >= excess(mid, 1) - 1);

    // A pending root beyond the ball is left for later stages.
    auto apart = instance("p=1;t=62;roots=(3:path1),(8:path1)");
    Arrangement far = apply_jump_lemma(initial_special_cover(build_wrapper(apart)), 0, 1);
    ClearOutcome stay = clear_roots(far, 1);
    CHECK(stay.stage == 1);
    CHECK(stay.shifted == 0);

    auto sixteen = instance("p=1;t=11;roots=(3:tree[0,0,0]),(5:path1),(7:path1)");
    Arrangement tiny_only(build_wrapper(sixteen), {{3, 0}});
    CHECK_THROWS_AS(clear_roots(tiny_only, 1), PreconditionViolated);
    CHECK_THROWS_AS(clear_roots(tiny_only, 0), PreconditionViolated);
}

TEST_CASE("non-tiny balls in the right half") {
    auto five = instance("p=1;t=23;roots=(3:path1),(5:path1)");
    Arrangement a = initial_special_cover(build_wrapper(five));
    RightHalfCount c1 = nontiny_right_half_lower_bound(a, 1);
    CHECK(c1.applicable);
    CHECK(c1.count == 1);  // only [16-24] starts past position 13
    CHECK(c1.holds);

    auto four = instance("p=1;t=11;roots=(3:tree[0,0,0]),(5:path1),(7:path1)");
    Arrangement b = initial_special_cover(build_wrapper(four));
    RightHalfCount c2 = nontiny_right_half_lower_bound(b, 1);
    CHECK_FALSE(c2.applicable);  // 16 is not above the 16 z^2 p^2 threshold

    auto wide = instance("p=2;t=285;roots=(3:path2),(7:path2)");
    Arrangement c = initial_special_cover(build_wrapper(wide));
    RightHalfCount c3 = nontiny_right_half_lower_bound(c, 2);
    CHECK(c3.applicable);
    CHECK(c3.count == 4);
    CHECK(c3.holds);

    // Random special tilings keep the property wherever the tiny block sits.
    std::mt19937_64 rng(7);
    for (int i = 0; i < 25; ++i) {
        Arrangement r = testsupport::random_special_tiling(1, 5, rng);
        CHECK(is_special_from(r, 0));
        CHECK(nontiny_right_half_lower_bound(r, 1).holds);
    }
}

TEST_CASE("large construction boundaries") {
    auto small = instance("p=1;t=14;roots=(3:path1),(5:path1)");
    CHECK_THROWS_AS(theorem_cover(*small), PreconditionViolated);  // needs p >= 2

    // Padded length 383^2 sits just below the 16 z^2 p^2 = 147456 threshold.
    auto below = instance("p=2;t=146685;roots=(3:path2),(7:path2)");
    CHECK_THROWS_AS(theorem_cover(*below), BelowSizeThreshold);

    // Padding to exactly 384^2 is accepted.
    auto at = instance("p=2;t=147452;roots=(3:path2),(7:path2)");
    BuildResult res = theorem_cover(*at);
    CHECK(res.route == Route::theorem);
    CHECK(res.certificate.valid);
    CHECK(res.certificate.balls.size() == 384);
    CHECK(res.certificate.max_radius == 383);
}

TEST_CASE("route dispatch") {
    BuildResult p100 = build(*path(100));
    CHECK(p100.route == Route::proposition);
    CHECK(p100.certificate.balls.size() == 10);
    CHECK(p100.certificate.valid);

    BuildResult leaf = build(*instance(leafy(1, 9, 2, 7)));
    CHECK(leaf.route == Route::trivial);
    CHECK(leaf.certificate.valid);

    BuildResult ex = build(*instance("p=1;t=11;roots=(3:tree[0,0,0]),(5:path1),(7:path1)"));
    CHECK(ex.route == Route::exact);
    CHECK(ex.certificate.valid);
    CHECK(ex.certificate.balls.size() <= 4);

    BuildResult gr = build(*instance("p=1;t=70;roots=(3:path1),(5:path1)"));
    CHECK(gr.route == Route::greedy);
    CHECK(gr.certificate.valid);

    BuildResult one = build(*path(1));
    CHECK(one.certificate.valid);
    CHECK(one.certificate.balls.size() == 1);
    CHECK(one.n == 1);
}
