#pragma once

#include <cstdint>
#include <vector>

#include "hullstream/geom.hpp"

namespace hullstream {

// Recursion-tree node descriptor. slope window is ascending (lo, hi);
// the end windows carry the -inf / +inf sentinels.
struct Subproblem {
    std::int64_t id = 0;
    int depth = 0;
    Point left_anchor;
    Point right_anchor;
    SlopeKey slope_lo = SlopeKey::neg_infinity();
    SlopeKey slope_hi = SlopeKey::pos_infinity();
    std::int64_t input_size = 0;
};

// Counters gathered across a recursion run; the property suites assert
// the balance and leaf-count shapes on these.
struct RecursionStats {
    std::int64_t nodes = 0;
    std::int64_t leaves = 0;
    int max_depth = 0;
    std::int64_t balance_violations = 0;
    Rational max_child_ratio = Rational(0);  // |P_k| / (2(1+eps0)|P|/(r+1) + 2)

    void note_child(std::size_t child_size, std::size_t parent_size, long r,
                    const Rational& eps0);
};

// An anchor together with a slope it supports; +inf for the leftmost
// anchor and -inf for the rightmost. Anchor lists are x-ascending, so
// the slopes run descending.
struct SupportAnchor {
    Point point;
    SlopeKey sigma;
};

// Exact (r+1)-quantile slopes of the multiset Q of group upper-hull edge
// slopes, groups being contiguous chunks of size r+1. Ascending; empty
// when Q is empty. Ranks k|Q|/(r+1) round to nearest, clamped to [1,|Q|].
std::vector<SlopeKey> quantile_slopes_exact(const std::vector<Point>& points, long r);

// For each sigma the point of P maximizing y - sigma*x (ties: larger y,
// then smaller x). Every returned point is extreme in P.
std::vector<Point> suitable_extreme_points(const std::vector<Point>& points,
                                           const std::vector<SlopeKey>& sigmas);

// Cascade-pruning refinement. anchors[0] and anchors.back() are the
// leftmost/rightmost anchors; windows are the consecutive anchor pairs.
// Returns one (possibly empty) point list per window: group-hull
// vertices between the window supports, strictly inside the window in x
// and strictly above the window's anchor line.
std::vector<std::vector<Point>> refine(const std::vector<Point>& points,
                                       const std::vector<SupportAnchor>& anchors,
                                       std::size_t group_size);

HullChain ram_upper_hull(const std::vector<Point>& points, long r,
                         RecursionStats* stats = nullptr);

// Clockwise extreme points starting at the leftmost point (max-y
// tie-break); equals oracle_hull.
std::vector<Point> ram_convex_hull(const std::vector<Point>& points, long r,
                                   RecursionStats* stats = nullptr);

// full hull from separately computed upper and lower chains (both
// x-ascending); shared by the RAM and streaming drivers
std::vector<Point> stitch_hull(const HullChain& upper, const HullChain& lower);

}  // namespace hullstream
