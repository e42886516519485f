#pragma once

#include "burning/cocoon.hpp"

namespace burning {

// Result of one stage transition driven by a shift.
struct ShiftOutcome {
    Arrangement arr;
    int ell = 0;  // shift magnitude actually applied
};

// Stage j -> j+1 when root x_{j+1} is left-bad in a non-tiny ball B and the
// arrangement is special from B.  Shifts at B by the smallest magnitude that
// tree-covers the root.  Guarantees: magnitude <= h_{j+1}, excess does not
// decrease, the result stays special from B, and roots x_1..x_j stay
// tree-covered.
ShiftOutcome apply_left_shift(const Arrangement& arr, int stage);

// Same transition without any specialness requirement or guarantee; the
// magnitude bound and the excess accounting still hold.
ShiftOutcome apply_weak_left_shift(const Arrangement& arr, int stage);

// Stage j -> j+1 when root x_{j+1} is right-bad in a non-tiny ball B.  Shifts
// at the ball directly right of B (which must exist, be non-tiny, and have the
// arrangement special from it) by the smallest magnitude that tree-covers the
// root.  Requires excess(arr, stage) >= h_{j+1}.  Guarantees: magnitude
// <= 2*h_{j+1}, excess(result, stage+1) >= excess(arr, stage) - h_{j+1} >= 0,
// the result stays special from that ball, and earlier roots stay covered.
ShiftOutcome apply_right_shift(const Arrangement& arr, int stage);

// Stage j -> j+z: tree-covers roots x_{j+1}..x_{j+z} using only jumps, so the
// covered set is preserved exactly.  Requires the tiny region (if any) to sit
// at the right end of the covered prefix, an admissible entry situation for
// x_{j+1}, and z*p non-tiny balls right of the ball containing x_{j+z} in the
// special sequence.  Guarantees: all z roots tree-covered, excess grows by
// exactly the sum of their subtree heights, and the result is special from
// the ball directly right of the one containing x_{j+z}.
Arrangement apply_jump_lemma(const Arrangement& arr, int stage, int z);

// True when apply_jump_lemma's preconditions hold, without mutating anything.
bool jump_lemma_applicable(const Arrangement& arr, int stage, int z);

}  // namespace burning
