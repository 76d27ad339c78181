#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hullstream {

using Rational = mpq_class;

// Exact rational planar point. mpq_class keeps fractions canonical
// (lowest terms, positive denominator), so equality is structural.
struct Point {
    Rational x;
    Rational y;

    Point() = default;
    Point(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {
        x.canonicalize();
        y.canonicalize();
    }
    Point(long px, long py) : x(px), y(py) {}

    friend bool operator==(const Point& a, const Point& b) {
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
    // lexicographic (x, y); used for canonical sets of points
    friend bool operator<(const Point& a, const Point& b) {
        int c = cmp(a.x, b.x);
        if (c != 0) return c < 0;
        return cmp(a.y, b.y) < 0;
    }

    std::string str() const;
};

enum class Orientation { Clockwise, CounterClockwise, Collinear };

Orientation orientation(const Point& p, const Point& q, const Point& r);

// cross product of (q-p) and (r-p), exact
Rational cross(const Point& p, const Point& q, const Point& r);

Rational squared_distance(const Point& a, const Point& b);

// Exact slope with -inf / +inf sentinels, totally ordered.
class SlopeKey {
  public:
    enum class Kind { NegInfinity, Finite, PosInfinity };

    SlopeKey() : kind_(Kind::Finite), value_(0) {}

    static SlopeKey finite(Rational v) {
        SlopeKey s;
        s.kind_ = Kind::Finite;
        s.value_ = std::move(v);
        s.value_.canonicalize();
        return s;
    }
    static SlopeKey neg_infinity() {
        SlopeKey s;
        s.kind_ = Kind::NegInfinity;
        return s;
    }
    static SlopeKey pos_infinity() {
        SlopeKey s;
        s.kind_ = Kind::PosInfinity;
        return s;
    }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    const Rational& value() const {
        if (!is_finite()) throw std::logic_error("SlopeKey: value() on infinite slope");
        return value_;
    }

    friend bool operator==(const SlopeKey& a, const SlopeKey& b) {
        if (a.kind_ != b.kind_) return false;
        if (a.kind_ != Kind::Finite) return true;
        return a.value_ == b.value_;
    }
    friend bool operator!=(const SlopeKey& a, const SlopeKey& b) { return !(a == b); }
    friend bool operator<(const SlopeKey& a, const SlopeKey& b) {
        if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) < static_cast<int>(b.kind_);
        if (a.kind_ != Kind::Finite) return false;
        return a.value_ < b.value_;
    }
    friend bool operator<=(const SlopeKey& a, const SlopeKey& b) { return a < b || a == b; }
    friend bool operator>(const SlopeKey& a, const SlopeKey& b) { return b < a; }
    friend bool operator>=(const SlopeKey& a, const SlopeKey& b) { return b <= a; }

    std::string str() const;

  private:
    Kind kind_;
    Rational value_;
};

// slope of the line through p and q; vertical pairs map to +inf
SlopeKey slope(const Point& p, const Point& q);

// Upper-hull chain: strictly increasing x, strictly decreasing edge slopes.
struct HullChain {
    std::vector<Point> vertices;

    bool empty() const { return vertices.empty(); }
    std::size_t size() const { return vertices.size(); }
    const Point& operator[](std::size_t i) const { return vertices[i]; }
};

// Upper hull of an arbitrary point list. Ties in x keep the max-y point;
// collinear interior points are excluded.
HullChain upper_hull_small(const std::vector<Point>& points);

// The chain vertex maximizing y - sigma*x (the support of slope sigma),
// ties broken toward larger y. Returns the vertex and its chain index.
std::pair<Point, std::size_t> support_point(const HullChain& chain, const SlopeKey& sigma);

// intercept y - sigma*x of the line with slope sigma through p
Rational support_intercept(const Point& p, const Rational& sigma);

// Independent full-hull oracle (monotone chain, written without reusing
// upper_hull_small). Clockwise extreme points starting at the leftmost
// point, max-y tie-break. Collinear points are not vertices.
std::vector<Point> oracle_hull(const std::vector<Point>& points);

// structural dedup, input order of first occurrence preserved
std::vector<Point> dedup_points(const std::vector<Point>& points);

}  // namespace hullstream
