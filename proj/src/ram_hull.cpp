#include "hullstream/ram_hull.hpp"

#include <algorithm>

namespace hullstream {

namespace {

std::int64_t rational_floor(const Rational& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q.get_si();
}

Point leftmost_point(const std::vector<Point>& pts) {
    const Point* best = &pts.front();
    for (const Point& p : pts) {
        int c = cmp(p.x, best->x);
        if (c < 0 || (c == 0 && p.y > best->y)) best = &p;
    }
    return *best;
}

Point rightmost_point(const std::vector<Point>& pts) {
    const Point* best = &pts.front();
    for (const Point& p : pts) {
        int c = cmp(p.x, best->x);
        if (c > 0 || (c == 0 && p.y > best->y)) best = &p;
    }
    return *best;
}

}  // namespace

void RecursionStats::note_child(std::size_t child_size, std::size_t parent_size, long r,
                                const Rational& eps0) {
    Rational bound = Rational(2) * (Rational(1) + eps0) *
                         Rational(static_cast<long>(parent_size)) / Rational(r + 1) +
                     Rational(2);
    Rational ratio = Rational(static_cast<long>(child_size)) / bound;
    if (ratio > max_child_ratio) max_child_ratio = ratio;
    if (Rational(static_cast<long>(child_size)) > bound) ++balance_violations;
}

std::vector<SlopeKey> quantile_slopes_exact(const std::vector<Point>& points, long r) {
    if (r < 1) throw std::invalid_argument("quantile_slopes_exact: r must be >= 1");
    if (points.size() < 2) throw std::invalid_argument("quantile_slopes_exact: need >= 2 points");

    const std::size_t group_size = static_cast<std::size_t>(r) + 1;
    std::vector<Rational> q;
    for (std::size_t begin = 0; begin < points.size(); begin += group_size) {
        const std::size_t end = std::min(points.size(), begin + group_size);
        std::vector<Point> group(points.begin() + static_cast<std::ptrdiff_t>(begin),
                                 points.begin() + static_cast<std::ptrdiff_t>(end));
        HullChain chain = upper_hull_small(group);
        for (std::size_t i = 0; i + 1 < chain.size(); ++i)
            q.push_back(slope(chain[i], chain[i + 1]).value());
    }
    if (q.empty()) return {};
    std::sort(q.begin(), q.end());

    std::vector<SlopeKey> out;
    out.reserve(static_cast<std::size_t>(r));
    const long qs = static_cast<long>(q.size());
    for (long k = 1; k <= r; ++k) {
        Rational target = Rational(k) * Rational(qs) / Rational(r + 1) + Rational(1, 2);
        std::int64_t rank = std::clamp<std::int64_t>(rational_floor(target), 1, qs);
        out.push_back(SlopeKey::finite(q[static_cast<std::size_t>(rank - 1)]));
    }
    return out;
}

std::vector<Point> suitable_extreme_points(const std::vector<Point>& points,
                                           const std::vector<SlopeKey>& sigmas) {
    if (points.empty()) throw std::invalid_argument("suitable_extreme_points: empty point set");
    std::vector<Point> out;
    out.reserve(sigmas.size());
    for (const SlopeKey& sk : sigmas) {
        const Rational& s = sk.value();
        const Point* best = &points.front();
        Rational best_ic = support_intercept(*best, s);
        for (const Point& p : points) {
            Rational ic = support_intercept(p, s);
            int c = cmp(ic, best_ic);
            if (c > 0 || (c == 0 && (p.y > best->y || (p.y == best->y && p.x < best->x)))) {
                best = &p;
                best_ic = std::move(ic);
            }
        }
        out.push_back(*best);
    }
    return out;
}

std::vector<std::vector<Point>> refine(const std::vector<Point>& points,
                                       const std::vector<SupportAnchor>& anchors,
                                       std::size_t group_size) {
    if (anchors.size() < 2) throw std::invalid_argument("refine: need at least two anchors");
    if (group_size < 1) throw std::invalid_argument("refine: group size must be >= 1");

    const std::size_t windows = anchors.size() - 1;
    std::vector<std::vector<Point>> out(windows);
    for (std::size_t begin = 0; begin < points.size(); begin += group_size) {
        const std::size_t end = std::min(points.size(), begin + group_size);
        std::vector<Point> group(points.begin() + static_cast<std::ptrdiff_t>(begin),
                                 points.begin() + static_cast<std::ptrdiff_t>(end));
        HullChain chain = upper_hull_small(group);
        for (std::size_t w = 0; w < windows; ++w) {
            const SupportAnchor& left = anchors[w];
            const SupportAnchor& right = anchors[w + 1];
            // cascade-pruning: only group-hull vertices between the two
            // window supports can survive into this child
            std::size_t alpha = support_point(chain, left.sigma).second;
            std::size_t beta = support_point(chain, right.sigma).second;
            for (std::size_t i = alpha; i <= beta && i < chain.size(); ++i) {
                const Point& v = chain[i];
                if (v.x > left.point.x && v.x < right.point.x &&
                    orientation(left.point, right.point, v) == Orientation::CounterClockwise) {
                    out[w].push_back(v);
                }
            }
        }
    }
    return out;
}

namespace {

class RamSolver {
  public:
    RamSolver(long r, RecursionStats* stats) : r_(r), stats_(stats) {
        cutoff_ = static_cast<std::size_t>(std::max<long>(r_ + 1, 8));
    }

    HullChain solve(const std::vector<Point>& pts, int depth) {
        if (stats_) {
            ++stats_->nodes;
            stats_->max_depth = std::max(stats_->max_depth, depth);
        }
        if (pts.size() <= cutoff_) {
            if (stats_) ++stats_->leaves;
            return upper_hull_small(pts);
        }

        const Point p_left = leftmost_point(pts);
        const Point p_right = rightmost_point(pts);
        if (p_left == p_right) {
            if (stats_) ++stats_->leaves;
            HullChain c;
            c.vertices.push_back(p_left);
            return c;
        }

        std::vector<SlopeKey> sigmas = quantile_slopes_exact(pts, r_);
        std::vector<Point> supports = suitable_extreme_points(pts, sigmas);

        std::vector<SupportAnchor> anchors;
        anchors.push_back({p_left, SlopeKey::pos_infinity()});
        // sigmas ascend, so walk them backwards to get x-ascending supports
        for (std::size_t k = supports.size(); k-- > 0;) {
            const Point& s = supports[k];
            if (s == p_left || s == p_right) continue;
            if (s == anchors.back().point) continue;
            if (s.x <= anchors.back().point.x) continue;
            anchors.push_back({s, sigmas[k]});
        }
        anchors.push_back({p_right, SlopeKey::neg_infinity()});

        if (anchors.size() == 2) {
            // no usable quantile support; split at the anchor-line support
            SlopeKey base = slope(p_left, p_right);
            Point m = suitable_extreme_points(pts, {base}).front();
            if (m == p_left || m == p_right) {
                // everything on or below the anchor line
                if (stats_) ++stats_->leaves;
                HullChain c;
                c.vertices = {p_left, p_right};
                return c;
            }
            anchors.insert(anchors.begin() + 1, {m, base});
        }

        std::vector<std::vector<Point>> children =
            refine(pts, anchors, static_cast<std::size_t>(r_) + 1);

        HullChain result;
        result.vertices.push_back(p_left);
        bool is_leaf = true;
        for (std::size_t w = 0; w < children.size(); ++w) {
            const Point& a = anchors[w].point;
            const Point& b = anchors[w + 1].point;
            if (children[w].empty()) {
                result.vertices.push_back(b);
                continue;
            }
            is_leaf = false;
            if (stats_) stats_->note_child(children[w].size(), pts.size(), r_, Rational(0));
            std::vector<Point> child;
            child.reserve(children[w].size() + 2);
            child.push_back(a);
            child.push_back(b);
            child.insert(child.end(), children[w].begin(), children[w].end());
            HullChain sub = solve(child, depth + 1);
            for (std::size_t i = 1; i < sub.size(); ++i) result.vertices.push_back(sub[i]);
        }
        if (is_leaf && stats_) ++stats_->leaves;
        return result;
    }

  private:
    long r_;
    std::size_t cutoff_;
    RecursionStats* stats_;
};

}  // namespace

HullChain ram_upper_hull(const std::vector<Point>& points, long r, RecursionStats* stats) {
    if (points.empty()) throw std::invalid_argument("ram_upper_hull: empty input");
    if (r < 1) throw std::invalid_argument("ram_upper_hull: r must be >= 1");
    std::vector<Point> pts = dedup_points(points);
    return RamSolver(r, stats).solve(pts, 0);
}

std::vector<Point> stitch_hull(const HullChain& upper, const HullChain& lower) {
    std::vector<Point> hull = upper.vertices;
    for (std::size_t i = lower.size(); i-- > 0;) {
        const Point& v = lower[i];
        if (v == upper.vertices.back() || v == upper.vertices.front()) continue;
        hull.push_back(v);
    }
    return hull;
}

std::vector<Point> ram_convex_hull(const std::vector<Point>& points, long r,
                                   RecursionStats* stats) {
    if (points.empty()) throw std::invalid_argument("ram_convex_hull: empty input");
    std::vector<Point> pts = dedup_points(points);
    HullChain upper = ram_upper_hull(pts, r, stats);

    std::vector<Point> reflected;
    reflected.reserve(pts.size());
    for (const Point& p : pts) reflected.emplace_back(p.x, Rational(-p.y));
    HullChain lower = ram_upper_hull(reflected, r, stats);
    for (Point& p : lower.vertices) p.y = -p.y;

    return stitch_hull(upper, lower);
}

}  // namespace hullstream
