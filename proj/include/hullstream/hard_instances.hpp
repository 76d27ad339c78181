#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hullstream/geom.hpp"

namespace hullstream {

// Point on the circle of the given radius from the tan-half-angle
// parameter t >= 0: radius * ((1-t^2)/(1+t^2), 2t/(1+t^2)). t=0 gives
// (radius, 0), t=1 the apex, larger t approaches (-radius, 0).
Point circle_point(const Rational& t, const Rational& radius);

// m points exactly on the circle of the given radius, strictly inside
// the open upper half-plane, sorted by increasing angle, approximately
// evenly spaced.
std::vector<Point> rational_half_circle(std::int64_t m, const Rational& radius);

// Two concentric half circles: outer a_i on radius 1, inner b_i = rho*a_i.
// A point b_i is extreme among the selected points iff a_i was not
// selected, so the extreme count reveals whether A and B intersect.
struct DisjointnessInstance {
    std::int64_t domain_n = 0;
    std::vector<std::int64_t> A, B;  // 1-based index sets
    std::vector<Point> outer;        // a_1..a_n
    std::vector<Point> inner;        // b_1..b_n
    Point anchor_right{1, 0};
    Point anchor_left{-1, 0};
    Rational rho;
    Rational k_max_sq;  // squared max distance from O to a chord a_i a_{i+2}
    std::vector<Point> points;  // tape order: Q_A, then Q_B, then anchors

    std::int64_t expected_extremes() const;  // |Q_A| + |{i in B : i not in A}| + 2
    std::string sidecar_json() const;
};

DisjointnessInstance gen_disjointness(const std::vector<std::int64_t>& A,
                                      const std::vector<std::int64_t>& B,
                                      std::int64_t domain_n);

// Four disjointness gadgets on four arcs of the upper half circle with
// inputs (A,B), (~A,B), (A,~B), (~A,~B). Every index contributes
// exactly 3 extreme points across the copies, so the total extreme
// count is 3*domain_n + 5 boundary anchors regardless of A and B.
struct FourCopyInstance {
    struct Copy {
        std::vector<Point> outer;  // per-index a points of this arc
        std::vector<Point> inner;
        std::vector<bool> sel_outer;
        std::vector<bool> sel_inner;
    };

    std::int64_t domain_n = 0;
    std::vector<std::int64_t> A, B;
    Rational rho;
    std::array<Copy, 4> copies;
    std::array<Point, 5> boundary;  // arc endpoints, shared anchors
    std::vector<Point> points;      // selected outer points, then inner + anchors

    std::string sidecar_json() const;
};

FourCopyInstance gen_four_copy(const std::vector<std::int64_t>& A,
                               const std::vector<std::int64_t>& B, std::int64_t domain_n);

// Appends total_n - |points| distinct points inside the disk of radius
// 1/4 around the origin. Intended for gadget instances whose hull
// contains that disk; their extreme-point set is unchanged.
std::vector<Point> pad_interior(const std::vector<Point>& points, std::int64_t total_n);

}  // namespace hullstream
