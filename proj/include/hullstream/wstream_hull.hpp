#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hullstream/geom.hpp"
#include "hullstream/metrics.hpp"
#include "hullstream/ram_hull.hpp"
#include "hullstream/tape.hpp"

namespace hullstream {

enum class WStreamMode { Deterministic, Randomized };

struct WStreamConfig {
    std::int64_t space_budget = 64;  // s, point-equivalents
    WStreamMode mode = WStreamMode::Deterministic;
    std::uint64_t seed = 0;  // randomized mode only
    // per-subproblem in-memory cost; defaults to c1*ceil(log2 n)
    // (deterministic) or c2 (randomized)
    std::optional<std::int64_t> per_subproblem_cost;
    bool enforce_budget = true;
};

struct WStreamResult {
    std::vector<Point> hull;  // clockwise from the leftmost point
    RunMetrics metrics;
    RecursionStats stats;
    std::int64_t subrounds = 0;
    std::int64_t subproblems = 0;  // descriptors ever created
    std::int64_t splits = 0;
    int max_depth = 0;
    std::int64_t batch_size = 0;
};

// Writable-tape convex hull with single-split recursion: each pending
// subproblem takes one split-slope scan, one support scan, and one
// rerouting scan; pending work is batched into subrounds of two passes.
WStreamResult run_wstream(Tape& tape, const WStreamConfig& config);

WStreamResult run_wstream_det(Tape& tape, std::int64_t space_budget);
WStreamResult run_wstream_rand(Tape& tape, std::int64_t space_budget, std::uint64_t seed);

// Split-point selection rule: keep the median support unless it fell on
// an anchor, in which case take the support of slope(a, b) over pz.
// nullopt when pz has no point strictly above the anchor line.
std::optional<Point> split_degenerate_guard(const std::vector<Point>& pz, const Point& a,
                                            const Point& b, const Point& median_support);

// documented, calibrated space-cost constants
std::int64_t wstream_det_cost(std::int64_t n);   // c1 * ceil(log2 n)
std::int64_t wstream_rand_cost();                // c2

}  // namespace hullstream
