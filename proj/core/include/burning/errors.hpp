#pragma once

#include <stdexcept>
#include <string>

namespace burning {

// Base class for everything this library throws on bad input or a broken
// internal invariant.  Callers that only care about pass/fail can catch this.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- input / format errors -------------------------------------------------

struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& what_)
        : Error("parse error at line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

struct NotATree : Error {
    int line;  // offending input line, 0 if structural (e.g. disconnected)
    NotATree(int line_, const std::string& what_) : Error(what_), line(line_) {}
};

struct NotAPCaterpillar : Error {
    int witness_vertex;    // vertex whose spine distance exceeds p
    int witness_distance;  // that distance
    NotAPCaterpillar(int v, int d)
        : Error("vertex " + std::to_string(v) + " lies at distance " + std::to_string(d) +
                " from the spine"),
          witness_vertex(v), witness_distance(d) {}
};

struct RootAtSpineEnd : Error {
    int spine_index;
    explicit RootAtSpineEnd(int idx)
        : Error("root at spine position " + std::to_string(idx) +
                " (spine endpoints cannot carry subtrees)"),
          spine_index(idx) {}
};

struct InfeasibleParameters : Error {
    using Error::Error;
};

// --- burning process errors ------------------------------------------------

struct SourceAlreadyBurned : Error {
    int round, vertex;
    SourceAlreadyBurned(int round_, int vertex_)
        : Error("source " + std::to_string(vertex_) + " scheduled in round " +
                std::to_string(round_) + " is already burned"),
          round(round_), vertex(vertex_) {}
};

struct SearchCapExceeded : Error {
    int n, cap;
    SearchCapExceeded(int n_, int cap_)
        : Error("instance has " + std::to_string(n_) +
                " vertices, exact search is capped at " + std::to_string(cap_)),
          n(n_), cap(cap_) {}
};

struct LimitExceeded : Error {
    int limit;
    explicit LimitExceeded(int limit_)
        : Error("no cover within the round limit " + std::to_string(limit_)), limit(limit_) {}
};

// --- arrangement errors ----------------------------------------------------

struct NonPrefixCoverage : Error {
    int gap_index;  // leftmost uncovered spine position below a covered one
    explicit NonPrefixCoverage(int gap)
        : Error("covered spine vertices are not a prefix, first gap at " + std::to_string(gap)),
          gap_index(gap) {}
};

struct RootInTinyRegion : Error {
    int root_position;
    explicit RootInTinyRegion(int pos)
        : Error("root at spine position " + std::to_string(pos) +
                " is covered only by tiny balls"),
          root_position(pos) {}
};

struct AmbiguousSuccessor : Error {
    int position;
    explicit AmbiguousSuccessor(int pos)
        : Error("two balls start at spine position " + std::to_string(pos) +
                ", successor is ambiguous"),
          position(pos) {}
};

struct ShiftOffSpine : Error {
    using Error::Error;
};

struct JumpOffSpine : Error {
    using Error::Error;
};

// --- builder errors ----------------------------------------------------------

struct NotPerfectSquare : Error {
    long long value;
    explicit NotPerfectSquare(long long v)
        : Error(std::to_string(v) + " is not a perfect square"), value(v) {}
};

struct BelowSizeThreshold : Error {
    long long n, threshold;
    BelowSizeThreshold(long long n_, long long thr)
        : Error("n = " + std::to_string(n_) + " is below the required threshold " +
                std::to_string(thr)),
          n(n_), threshold(thr) {}
};

struct PreconditionViolated : Error {
    std::string which;
    explicit PreconditionViolated(const std::string& which_)
        : Error("precondition violated: " + which_), which(which_) {}
};

// Raised when a runtime audit of the constructive pipeline fails.  These
// checks mirror the guarantees the construction is supposed to maintain, so
// this exception is unreachable unless the machinery (or its input contract)
// is wrong.
struct InvariantBroken : Error {
    int stage;
    std::string which;
    InvariantBroken(int stage_, const std::string& which_)
        : Error("invariant broken at stage " + std::to_string(stage_) + ": " + which_),
          stage(stage_), which(which_) {}
};

struct InternalExhaustion : Error {
    using Error::Error;
};

}  // namespace burning
