#include "hullstream/calipers.hpp"

#include <optional>
#include <stdexcept>

namespace hullstream {

namespace {

Rational cross2(const Point& u, const Point& v) { return u.x * v.y - u.y * v.x; }
Rational dot2(const Point& u, const Point& v) { return u.x * v.x + u.y * v.y; }
Point sub(const Point& a, const Point& b) { return Point(a.x - b.x, a.y - b.y); }

std::size_t window_cap(std::int64_t s) {
    if (s < 1) throw std::invalid_argument("calipers: space budget must be >= 1");
    return std::max<std::size_t>(2, static_cast<std::size_t>((s + 1) / 2));
}

// one chunked scan: hull size plus exact support positions for the
// first edge's direction, so every caliper cursor starts in place
struct Prelim {
    std::size_t h = 0;
    Point p0, p1;
    std::size_t far_idx = 0;    // max of -cross(d, p - p0)
    std::size_t front_idx = 0;  // max of dot(d, p)
    std::size_t back_idx = 0;   // min of dot(d, p)
};

Prelim prelim_scan(ReplayableHull& stream, std::size_t cap) {
    Prelim pre;
    std::vector<Point> head = stream.chunk(0, 2);
    if (head.empty()) throw std::invalid_argument("calipers: empty hull");
    pre.p0 = head[0];
    pre.p1 = head.size() > 1 ? head[1] : head[0];
    if (head.size() < 2) {
        pre.h = 1;
        return pre;
    }
    const Point d = sub(pre.p1, pre.p0);

    std::optional<Rational> far_best, front_best, back_best;
    std::size_t offset = 0;
    for (;;) {
        std::vector<Point> chunk = stream.chunk(offset, cap);
        for (std::size_t k = 0; k < chunk.size(); ++k) {
            const std::size_t idx = offset + k;
            Rational far_v = -cross2(d, sub(chunk[k], pre.p0));
            Rational proj = dot2(d, chunk[k]);
            if (!far_best || far_v > *far_best) {
                far_best = std::move(far_v);
                pre.far_idx = idx;
            }
            if (!front_best || proj > *front_best) {
                front_best = proj;
                pre.front_idx = idx;
            }
            if (!back_best || proj < *back_best) {
                back_best = std::move(proj);
                pre.back_idx = idx;
            }
        }
        offset += chunk.size();
        if (chunk.size() < cap) break;
    }
    pre.h = offset;
    return pre;
}

}  // namespace

std::vector<Point> ReplayableHull::chunk(std::size_t offset, std::size_t count) {
    ++replays_;
    std::vector<Point> hull = producer_();
    std::vector<Point> out;
    for (std::size_t i = offset; i < hull.size() && i < offset + count; ++i)
        out.push_back(hull[i]);
    return out;
}

ReplayableHull make_hull_stream(
    std::vector<Point> points,
    std::function<std::vector<Point>(const std::vector<Point>&)> algo) {
    return ReplayableHull(
        [pts = std::move(points), fn = std::move(algo)]() { return fn(pts); });
}

CaliperCursor::CaliperCursor(ReplayableHull& stream, std::size_t hull_size, std::size_t start,
                             std::size_t window_cap)
    : stream_(stream), h_(hull_size), start_(start % std::max<std::size_t>(1, hull_size)),
      cap_(std::max<std::size_t>(2, window_cap)) {
    if (h_ == 0) throw std::invalid_argument("CaliperCursor: empty hull");
}

void CaliperCursor::load(std::size_t abs) {
    if (!window_.empty()) {
        prev_ = window_.back();
        has_prev_ = true;
    }
    window_.clear();
    wbase_ = abs;
    ++refills_;
    std::size_t want = cap_;
    std::size_t at = (start_ + abs) % h_;
    while (want > 0) {
        std::size_t take = std::min(want, h_ - at);
        std::vector<Point> chunk = stream_.chunk(at, take);
        window_.insert(window_.end(), chunk.begin(), chunk.end());
        want -= take;
        at = 0;
    }
}

const Point& CaliperCursor::peek(std::size_t ahead) {
    const std::size_t abs = consumed_ + ahead;
    if (window_.empty()) load(abs);
    if (abs + 1 == wbase_ && has_prev_) return prev_;
    if (abs < wbase_) throw std::logic_error("CaliperCursor: rewound past the window");
    if (abs >= wbase_ + window_.size()) load(abs);
    return window_[abs - wbase_];
}

DiameterResult diameter(ReplayableHull& edge_stream, ReplayableHull& support_stream,
                        std::int64_t s) {
    const std::size_t cap = window_cap(s);
    Prelim pre = prelim_scan(support_stream, cap);
    DiameterResult res;
    res.hull_size = pre.h;
    res.squared = Rational(0);
    res.a = res.b = pre.p0;
    if (pre.h == 1) return res;

    CaliperCursor ci(edge_stream, pre.h, 0, cap);
    CaliperCursor cj(support_stream, pre.h, pre.far_idx, cap);

    auto note = [&](const Point& a, const Point& b) {
        Rational d = squared_distance(a, b);
        if (d > res.squared) {
            res.squared = std::move(d);
            res.a = a;
            res.b = b;
        }
    };

    for (std::size_t i = 0; i < pre.h; ++i) {
        const Point pi = ci.peek(0);
        const Point pi1 = ci.peek(1);
        const Point d = sub(pi1, pi);
        Rational cr;
        for (;;) {
            const Point pj = cj.peek(0);
            const Point pj1 = cj.peek(1);
            cr = cross2(d, sub(pj1, pj));
            if (sgn(cr) < 0 && cj.consumed() < pre.h + 2) {
                cj.advance();
            } else {
                break;
            }
        }
        const Point pj = cj.peek(0);
        note(pi, pj);
        note(pi1, pj);
        if (sgn(cr) == 0) {
            const Point pj1 = cj.peek(1);
            note(pi, pj1);
            note(pi1, pj1);
        }
        ci.advance();
    }
    res.refills = {ci.refills(), cj.refills()};
    return res;
}

RectangleResult min_enclosing_rectangle(std::array<ReplayableHull*, 4> streams,
                                        std::int64_t s) {
    const std::size_t cap = window_cap(s);
    Prelim pre = prelim_scan(*streams[1], cap);
    RectangleResult res;
    res.hull_size = pre.h;
    res.area = Rational(0);
    res.corners = {pre.p0, pre.p0, pre.p0, pre.p0};
    if (pre.h == 1) return res;
    if (pre.h == 2) {
        res.corners = {pre.p0, pre.p1, pre.p1, pre.p0};
        return res;
    }

    CaliperCursor ce(*streams[0], pre.h, 0, cap);
    CaliperCursor cfar(*streams[1], pre.h, pre.far_idx, cap);
    CaliperCursor cfront(*streams[2], pre.h, pre.front_idx, cap);
    CaliperCursor cback(*streams[3], pre.h, pre.back_idx, cap);

    std::optional<Rational> best;
    for (std::size_t i = 0; i < pre.h; ++i) {
        const Point pi = ce.peek(0);
        const Point pi1 = ce.peek(1);
        const Point d = sub(pi1, pi);

        auto roll = [&](CaliperCursor& c, auto keep_going) {
            while (c.consumed() < pre.h + 2) {
                const Point cur = c.peek(0);
                const Point nxt = c.peek(1);
                if (!keep_going(sub(nxt, cur))) break;
                c.advance();
            }
        };
        roll(cfar, [&](const Point& e) { return sgn(cross2(d, e)) < 0; });
        roll(cfront, [&](const Point& e) { return sgn(dot2(d, e)) > 0; });
        roll(cback, [&](const Point& e) { return sgn(dot2(d, e)) < 0; });

        const Point pfar = cfar.peek(0);
        const Point pfront = cfront.peek(0);
        const Point pback = cback.peek(0);
        const Rational l2 = dot2(d, d);
        const Rational cr = cross2(d, sub(pfar, pi));  // <= 0 for a clockwise hull
        const Rational width_num = dot2(d, pfront) - dot2(d, pback);
        Rational area = width_num * (-cr) / l2;
        if (!best || area < *best) {
            best = area;
            const Rational t1 = dot2(d, sub(pback, pi)) / l2;
            const Rational t2 = dot2(d, sub(pfront, pi)) / l2;
            const Rational k = cr / l2;
            const Point n(Rational(-d.y), Rational(d.x));
            Point c1(pi.x + t1 * d.x, pi.y + t1 * d.y);
            Point c2(pi.x + t2 * d.x, pi.y + t2 * d.y);
            Point c3(c2.x + k * n.x, c2.y + k * n.y);
            Point c4(c1.x + k * n.x, c1.y + k * n.y);
            res.area = std::move(area);
            res.corners = {std::move(c1), std::move(c2), std::move(c3), std::move(c4)};
        }
        ce.advance();
    }
    res.refills = {ce.refills(), cfar.refills(), cfront.refills(), cback.refills()};
    return res;
}

}  // namespace hullstream
