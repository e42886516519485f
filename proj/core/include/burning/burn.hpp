#pragma once

#include <optional>
#include <vector>

#include "burning/tree.hpp"

namespace burning {

// Sources in round order: sources[i] is ignited in round i+1.
struct Schedule {
    std::vector<int> sources;
};

struct SimulationResult {
    int rounds = 0;                // first round at which every vertex is burned
    std::vector<int> burned_round; // per vertex
};

// One ball of the ball-cover view: every vertex within `radius` of `center`.
struct VertexBall {
    int center = 0;
    int radius = 0;
};

struct CoverCertificate {
    std::vector<VertexBall> balls;
    bool valid = false;            // every vertex covered and radii distinct
    std::vector<int> uncovered;    // empty iff all vertices covered
    int max_radius = -1;
};

// Plays the process round by round: spread first, then ignite the next
// source.  A source that is already burned raises SourceAlreadyBurned.  The
// schedule may be shorter than the number of rounds needed; spreading then
// continues on its own.
SimulationResult simulate(const Tree& tree, const Schedule& schedule);

CoverCertificate validate_cover(const Tree& tree, const std::vector<VertexBall>& balls);

// Largest radius first.  If a center is already burned when its round
// arrives, any unburned vertex is substituted (skipped if none remain).
Schedule schedule_from_cover(const Tree& tree, const std::vector<VertexBall>& balls);

struct ExactOptions {
    int cap = 64;                  // instances above this size are refused
    std::optional<int> limit;      // optional bound on the answer
    bool capacity_prune = true;    // see exact_burning_number
};

struct ExactResult {
    int b = 0;
    std::vector<VertexBall> cover;  // radii b-1, b-2, ..., 0
};

// Smallest k admitting a cover with radii 0..k-1, by iterative deepening.
// Branches on which remaining ball covers the lowest-id uncovered vertex;
// the capacity prune discards states whose remaining balls cannot reach the
// number of still-uncovered vertices even at their best single-ball sizes.
ExactResult exact_burning_number(const Tree& tree, const ExactOptions& options = {});

// True iff the exact value is at most ceil(sqrt(n)).
bool bnc_check(const Tree& tree, const ExactOptions& options = {});

int ceil_isqrt(long long value);
int floor_isqrt(long long value);

}  // namespace burning
