#include "hullstream/geom.hpp"

#include <algorithm>
#include <set>

namespace hullstream {

std::string Point::str() const {
    return x.get_str() + " " + y.get_str();
}

Rational cross(const Point& p, const Point& q, const Point& r) {
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
}

Orientation orientation(const Point& p, const Point& q, const Point& r) {
    int s = sgn(cross(p, q, r));
    if (s > 0) return Orientation::CounterClockwise;
    if (s < 0) return Orientation::Clockwise;
    return Orientation::Collinear;
}

Rational squared_distance(const Point& a, const Point& b) {
    Rational dx = a.x - b.x;
    Rational dy = a.y - b.y;
    return dx * dx + dy * dy;
}

std::string SlopeKey::str() const {
    switch (kind_) {
        case Kind::NegInfinity: return "-inf";
        case Kind::PosInfinity: return "inf";
        default: return value_.get_str();
    }
}

SlopeKey slope(const Point& p, const Point& q) {
    if (p == q) throw std::invalid_argument("slope: degenerate pair");
    if (p.x == q.x) return SlopeKey::pos_infinity();
    return SlopeKey::finite(Rational((q.y - p.y) / (q.x - p.x)));
}

HullChain upper_hull_small(const std::vector<Point>& points) {
    if (points.empty()) throw std::invalid_argument("upper_hull_small: empty input");
    std::vector<Point> pts = points;
    // x ascending, y descending; duplicate x keeps only the max-y point
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        int c = cmp(a.x, b.x);
        if (c != 0) return c < 0;
        return cmp(a.y, b.y) > 0;
    });
    std::vector<Point> cols;
    for (const Point& p : pts) {
        if (cols.empty() || cols.back().x != p.x) cols.push_back(p);
    }

    HullChain chain;
    for (const Point& p : cols) {
        while (chain.vertices.size() >= 2) {
            const Point& a = chain.vertices[chain.vertices.size() - 2];
            const Point& b = chain.vertices.back();
            if (orientation(a, b, p) == Orientation::Clockwise) break;
            chain.vertices.pop_back();
        }
        chain.vertices.push_back(p);
    }
    return chain;
}

Rational support_intercept(const Point& p, const Rational& sigma) {
    return p.y - sigma * p.x;
}

std::pair<Point, std::size_t> support_point(const HullChain& chain, const SlopeKey& sigma) {
    if (chain.empty()) throw std::invalid_argument("support_point: empty chain");
    if (!sigma.is_finite()) {
        // -inf supports the rightmost vertex, +inf the leftmost
        if (sigma.kind() == SlopeKey::Kind::NegInfinity)
            return {chain.vertices.back(), chain.size() - 1};
        return {chain.vertices.front(), 0};
    }
    const Rational& s = sigma.value();
    std::size_t best = 0;
    Rational best_ic = support_intercept(chain[0], s);
    for (std::size_t i = 1; i < chain.size(); ++i) {
        Rational ic = support_intercept(chain[i], s);
        int c = cmp(ic, best_ic);
        if (c > 0 || (c == 0 && chain[i].y > chain[best].y)) {
            best = i;
            best_ic = ic;
        }
    }
    return {chain[best], best};
}

std::vector<Point> dedup_points(const std::vector<Point>& points) {
    std::set<Point> seen;
    std::vector<Point> out;
    out.reserve(points.size());
    for (const Point& p : points) {
        if (seen.insert(p).second) out.push_back(p);
    }
    return out;
}

std::vector<Point> oracle_hull(const std::vector<Point>& points) {
    if (points.empty()) throw std::invalid_argument("oracle_hull: empty input");
    std::vector<Point> pts = dedup_points(points);
    std::sort(pts.begin(), pts.end());
    const std::size_t n = pts.size();
    if (n == 1) return {pts[0]};

    auto turns_right = [](const Point& a, const Point& b, const Point& c) {
        return sgn((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)) < 0;
    };

    // upper chain left to right, then lower chain right to left; strict
    // right turns only, so no collinear vertices survive
    std::vector<Point> upper;
    for (const Point& p : pts) {
        while (upper.size() >= 2 && !turns_right(upper[upper.size() - 2], upper.back(), p))
            upper.pop_back();
        upper.push_back(p);
    }
    std::vector<Point> lower;
    for (std::size_t i = n; i-- > 0;) {
        const Point& p = pts[i];
        while (lower.size() >= 2 && !turns_right(lower[lower.size() - 2], lower.back(), p))
            lower.pop_back();
        lower.push_back(p);
    }

    std::vector<Point> hull;
    hull.insert(hull.end(), upper.begin(), upper.end());
    hull.insert(hull.end(), lower.begin() + 1, lower.end() - 1);
    if (hull.size() >= 2 && hull.front() == hull.back()) hull.pop_back();

    // rotate so the walk starts at the leftmost point, max-y tie-break
    std::size_t start = 0;
    for (std::size_t i = 1; i < hull.size(); ++i) {
        int c = cmp(hull[i].x, hull[start].x);
        if (c < 0 || (c == 0 && hull[i].y > hull[start].y)) start = i;
    }
    std::rotate(hull.begin(), hull.begin() + static_cast<std::ptrdiff_t>(start), hull.end());
    return hull;
}

}  // namespace hullstream
