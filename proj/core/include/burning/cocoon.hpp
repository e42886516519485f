#pragma once

#include <memory>
#include <string>
#include <vector>

#include "burning/caterpillar.hpp"

namespace burning {

// The caterpillar's spine extended on the right by one path vertex per
// subtree vertex; all ball arrangements live on this extended spine,
// addressed by 1-based positions.
struct Wrapper {
    std::shared_ptr<const PCaterpillar> pcat;
    int spine_len = 0;  // t + sum of nv_i
};

Wrapper build_wrapper(std::shared_ptr<const PCaterpillar> pcat);

// Stage j of the unfolding: roots x_1..x_j hang as real subtrees, roots
// x_{j+1}..x_k are still flattened into the spine extension.
struct CocoonStage {
    int j = 0;
    int spine_len = 0;  // t + sum of h_i over i > j
};

struct Cocoon {
    Wrapper wrapper;
    std::vector<CocoonStage> stages;  // k+1 entries, stage k is the tree itself
};

Cocoon build_cocoon(std::shared_ptr<const PCaterpillar> pcat);
int stage_spine_len(const PCaterpillar& pcat, int stage);

struct SpineBall {
    int center = 0;  // 1-based position on the wrapper spine
    int radius = 0;
    int left() const { return center - radius; }
    int right() const { return center + radius; }
    bool tiny(int p) const { return radius < p; }
};

// A list of balls on the wrapper spine, kept in weakly increasing center
// order with pairwise distinct radii.  Balls may overlap; prefix coverage
// is only demanded when the excess is queried.
class Arrangement {
  public:
    Arrangement(Wrapper wrapper, std::vector<SpineBall> balls);

    const Wrapper& wrap() const { return wrapper_; }
    const PCaterpillar& pcat() const { return *wrapper_.pcat; }
    const std::vector<SpineBall>& balls() const { return balls_; }
    const SpineBall& ball(int index) const { return balls_[index]; }
    int size() const { return static_cast<int>(balls_.size()); }
    int length() const { return wrapper_.spine_len; }

    // Length of the covered prefix: largest c with positions 1..c all
    // covered.  Throws NonPrefixCoverage if anything is covered beyond the
    // first gap.
    int covered_prefix() const;

    int index_of_radius(int radius) const;  // -1 when absent

  private:
    Wrapper wrapper_;
    std::vector<SpineBall> balls_;
};

// covered prefix length minus the stage's spine length; may be negative.
int excess(const Arrangement& arr, int stage);

enum class RootStatusKind { TreeCovered, LeftBad, RightBad, Exposed };

struct RootStatus {
    RootStatusKind kind = RootStatusKind::Exposed;
    int ball = -1;  // witness ball index, -1 for Exposed
};

// Status of root x_ordinal (1-based).  Tree-covered when any ball keeps the
// whole subtree within its radius; otherwise bad relative to the rightmost
// non-tiny ball containing the root.  Throws RootInTinyRegion when only
// tiny balls contain it.
RootStatus classify_root(const Arrangement& arr, int ordinal);

// Unique ball whose left endpoint is ball(index).right()+1 (successor) or
// whose right endpoint is ball(index).left()-1 (predecessor); -1 when none.
// Throws AmbiguousSuccessor when two balls qualify.
int successor_index(const Arrangement& arr, int index);
int predecessor_index(const Arrangement& arr, int index);

// A special sequence starting at a ball walks successor-adjacent balls to
// the end of the covered prefix, with radii strictly increasing among its
// non-tiny members and its tiny members forming one contiguous, root-free
// block.
bool is_special_from(const Arrangement& arr, int index);
std::vector<int> extract_special_sequence(const Arrangement& arr, int index);

// Moves ball(at_index) and every ball right of it ell positions left.
Arrangement shift(const Arrangement& arr, int at_index, int ell);

// Moves ball(mover_index) so its left endpoint lands on ball(target_index)'s
// old left endpoint; balls target..mover-1 translate right by the mover's
// width.  The covered set is unchanged.
Arrangement jump(const Arrangement& arr, int mover_index, int target_index);

struct TinyRegion {
    int lo = 0;
    int hi = -1;
    int covered = 0;  // number of positions under tiny balls
    bool contiguous = true;
    bool empty() const { return covered == 0; }
};

TinyRegion tiny_region(const Arrangement& arr);

// Moves the contiguous tiny block so it starts at position v; balls with
// left endpoint >= v translate right by the block width.  The covered set
// is unchanged.
Arrangement relocate_tiny_block(const Arrangement& arr, int v);

struct TraceStep {
    std::string op;
    int stage = 0;
    int eps = 0;
    std::string balls;
};

struct Trace {
    std::vector<TraceStep> steps;
};

std::string format_balls(const Arrangement& arr);
void record_step(Trace& trace, const std::string& op, int stage, const Arrangement& arr);

}  // namespace burning
