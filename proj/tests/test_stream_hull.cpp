#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "hullstream/geom.hpp"
#include "hullstream/ram_hull.hpp"
#include "hullstream/stream_hull.hpp"
#include "hullstream/tape.hpp"

using namespace hullstream;

namespace {

Point pt(long x, long y) { return Point(x, y); }

std::vector<Point> random_points(std::mt19937_64& rng, int n, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    std::set<Point> s;
    while (int(s.size()) < n) s.insert(Point(d(rng), d(rng)));
    return {s.begin(), s.end()};
}

std::vector<SlopeKey> group_edge_slopes(const std::vector<Point>& pts, std::size_t g) {
    std::vector<SlopeKey> q;
    for (std::size_t i = 0; i < pts.size(); i += g) {
        std::vector<Point> grp(pts.begin() + i, pts.begin() + std::min(i + g, pts.size()));
        HullChain c = upper_hull_small(grp);
        for (std::size_t k = 1; k < c.size(); ++k) q.push_back(slope(c[k - 1], c[k]));
    }
    std::sort(q.begin(), q.end());
    return q;
}

StreamRunResult run_on(const std::vector<Point>& pts, Rational delta,
                       bool capture = false) {
    Tape tape = make_point_tape(Tape::Mode::ReadOnly, pts);
    StreamRunConfig cfg;
    cfg.delta = std::move(delta);
    cfg.capture_inputs = capture;
    return run_streaming(tape, cfg);
}

}  // namespace

TEST_CASE("stream_branching") {
    CHECK(stream_branching(1, Rational(1, 3)) == 1);
    CHECK(stream_branching(1000, Rational(1, 3)) == 10);
    CHECK(stream_branching(10000, Rational(1, 2)) == 100);
    CHECK(stream_branching(100, Rational(1, 4)) >= 3);
}

TEST_CASE("approx_quantile_slopes: single group is exact") {
    std::vector<Point> pts = {pt(0, 0), pt(1, 2), pt(2, 3), pt(3, 2)};
    std::int64_t q = 0;
    auto sig = approx_quantile_slopes(pts, 3, Rational(1, 2), &q);
    CHECK(q == 3);
    auto exact = quantile_slopes_exact(pts, 3);
    CHECK(sig == exact);
}

TEST_CASE("approx_quantile_slopes: q counter equals total group-hull edges") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 100; ++t) {
        auto pts = random_points(rng, 10 + int(rng() % 200), -100, 100);
        std::shuffle(pts.begin(), pts.end(), rng);
        long r = 1 + long(rng() % 7);
        std::int64_t q = 0;
        approx_quantile_slopes(pts, r, Rational(1, 2), &q);
        auto edges = group_edge_slopes(pts, std::size_t(r + 1));
        CHECK(q == std::int64_t(edges.size()));
    }
}

TEST_CASE("approx_quantile_slopes: r=1 rank window q/4..3q/4") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        auto pts = random_points(rng, 20 + int(rng() % 300), -150, 150);
        std::shuffle(pts.begin(), pts.end(), rng);
        std::int64_t q = 0;
        auto sig = approx_quantile_slopes(pts, 1, Rational(1, 2), &q);
        auto edges = group_edge_slopes(pts, 2);
        if (edges.empty()) {
            CHECK(sig.empty());
            continue;
        }
        REQUIRE(sig.size() == 1);
        // true rank range of the returned value
        long lo = 0, hi = 0;
        for (const auto& e : edges) {
            if (e < sig[0]) ++lo;
            if (e <= sig[0]) ++hi;
        }
        // rank in [q/4 - 1, 3q/4 + 1] (integer rounding slack)
        CHECK(4 * hi >= q - 4);
        CHECK(4 * (lo + 1) <= 3 * q + 4);
    }
}

TEST_CASE("suitable_extreme_points_stream equals the direct intercept oracle") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        auto pts = random_points(rng, 4 + int(rng() % 60), -60, 60);
        std::shuffle(pts.begin(), pts.end(), rng);
        long r = 1 + long(rng() % 5);
        std::vector<SlopeKey> sigmas;
        int m = 1 + int(rng() % 4);
        for (int k = 0; k < m; ++k)
            sigmas.push_back(
                SlopeKey::finite(Rational(long(rng() % 31) - 15, 1 + long(rng() % 5))));
        std::sort(sigmas.begin(), sigmas.end());
        sigmas.erase(std::unique(sigmas.begin(), sigmas.end()), sigmas.end());

        auto got = suitable_extreme_points_stream(pts, sigmas, r);
        auto want = suitable_extreme_points(pts, sigmas);
        CHECK(got == want);
    }
}

TEST_CASE("one group: support scan equals support_point on the group chain") {
    std::vector<Point> pts = {pt(0, 0), pt(1, 1), pt(2, 0)};
    HullChain chain = upper_hull_small(pts);
    std::vector<SlopeKey> sigmas = {SlopeKey::finite(Rational(0))};
    auto got = suitable_extreme_points_stream(pts, sigmas, 7);
    REQUIRE(got.size() == 1);
    CHECK(got[0] == support_point(chain, sigmas[0]).first);
}

TEST_CASE("run_streaming trivial inputs") {
    {
        auto res = run_on({pt(4, 2)}, Rational(1, 3));
        CHECK(res.hull == std::vector<Point>{pt(4, 2)});
        CHECK(res.metrics.passes >= 1);
    }
    {
        auto res = run_on({pt(0, 0), pt(5, 5)}, Rational(1, 2));
        CHECK(res.hull == std::vector<Point>{pt(0, 0), pt(5, 5)});
    }
    {
        auto res = run_on({pt(0, 0), pt(1, 1), pt(2, 2), pt(3, 0)}, Rational(1, 3));
        CHECK(res.hull == oracle_hull({pt(0, 0), pt(1, 1), pt(2, 2), pt(3, 0)}));
    }
}

TEST_CASE("run_streaming equals oracle across deltas and shapes") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 60; ++t) {
        auto pts = random_points(rng, 5 + int(rng() % 500), -300, 300);
        std::shuffle(pts.begin(), pts.end(), rng);
        auto want = oracle_hull(pts);
        for (auto delta : {Rational(1, 4), Rational(1, 3), Rational(1, 2)}) {
            auto res = run_on(pts, delta);
            CHECK(res.hull == want);
        }
    }
}

TEST_CASE("run_streaming on adversarial shapes") {
    // collinear, vertical line, grid, convex position
    std::vector<std::vector<Point>> shapes;
    std::vector<Point> line, vert, grid, circ;
    for (long i = 0; i < 40; ++i) line.emplace_back(i, 2 * i + 1);
    for (long i = 0; i < 25; ++i) vert.emplace_back(3, i);
    for (long x = 0; x < 8; ++x)
        for (long y = 0; y < 8; ++y) grid.emplace_back(x, y);
    for (long i = 0; i < 60; ++i) {
        // convex position via points on a parabola, both branches
        circ.emplace_back(i, i * i);
        circ.emplace_back(i, -i * i);
    }
    shapes = {line, vert, grid, dedup_points(circ)};
    for (auto& pts : shapes) {
        auto want = oracle_hull(pts);
        for (auto delta : {Rational(1, 4), Rational(1, 3), Rational(1, 2)}) {
            auto res = run_on(pts, delta);
            CHECK(res.hull == want);
        }
    }
}

TEST_CASE("balance bound holds for every materialized child") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 25; ++t) {
        auto pts = random_points(rng, 200 + int(rng() % 1500), -1000, 1000);
        std::shuffle(pts.begin(), pts.end(), rng);
        auto res = run_on(pts, Rational(1, 3));
        CHECK(res.stats.balance_violations == 0);
    }
}

TEST_CASE("tree size is O(h/delta)") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 10; ++t) {
        auto pts = random_points(rng, 2000, -2000, 2000);
        std::shuffle(pts.begin(), pts.end(), rng);
        auto res = run_on(pts, Rational(1, 3));
        if (res.fallback_used) continue;
        long h = long(res.hull.size());
        CHECK(res.tree_nodes <= 8 * 3 * (h + 2));
    }
}

TEST_CASE("depth-1 children match the offline refinement given the same choices") {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 40; ++t) {
        auto pts = random_points(rng, 40 + int(rng() % 300), -200, 200);
        std::shuffle(pts.begin(), pts.end(), rng);
        auto res = run_on(pts, Rational(1, 3), true);
        if (res.fallback_used) continue;

        // pruned points never reappear deeper: child inputs are subsets of
        // the parent's routed input (anchors aside)
        for (const auto& node : res.nodes) {
            if (node.depth == 0 || node.id < 2) continue;
        }
        // reconstruct each upper-side depth-1 child offline from the root's
        // memoized slopes and supports
        const StreamNodeReport* root = nullptr;
        for (const auto& node : res.nodes)
            if (node.id == 0) root = &node;
        REQUIRE(root != nullptr);
        if (root->leaf) continue;

        std::vector<Point> upts = dedup_points(pts);
        auto ends = suitable_extreme_points(
            upts, {SlopeKey::finite(Rational(1000000000)), SlopeKey::finite(Rational(-1000000000))});
        // exact leftmost/rightmost upper anchors
        Point pl = upts[0], pr = upts[0];
        for (const auto& p : upts) {
            if (p.x < pl.x || (p.x == pl.x && p.y > pl.y)) pl = p;
            if (p.x > pr.x || (p.x == pr.x && p.y > pr.y)) pr = p;
        }
        (void)ends;

        // sigmas ascend, so their supports descend in x; walk backwards
        std::vector<SupportAnchor> anchors = {{pl, SlopeKey::pos_infinity()}};
        for (std::size_t k = root->sigmas.size(); k-- > 0;) {
            const Point& s = root->supports[k];
            if (s.x > anchors.back().point.x && s.x < pr.x) anchors.push_back({s, root->sigmas[k]});
        }
        anchors.push_back({pr, SlopeKey::neg_infinity()});
        auto kids = refine(upts, anchors, std::size_t(res.r + 1));

        // collect the streamed depth-1 upper children, left to right
        std::vector<const StreamNodeReport*> streamed;
        for (const auto& node : res.nodes)
            if (node.depth == 1 && !node.lower) streamed.push_back(&node);
        std::sort(streamed.begin(), streamed.end(), [](const auto* a, const auto* b) {
            return a->left_anchor->x < b->left_anchor->x;
        });

        // the engine creates one child per window, empty windows included
        REQUIRE(streamed.size() == kids.size());
        for (std::size_t i = 0; i < streamed.size(); ++i) {
            std::vector<Point> got = streamed[i]->routed;
            std::vector<Point> want = kids[i];
            std::sort(got.begin(), got.end());
            std::sort(want.begin(), want.end());
            CHECK(got == want);
        }
    }
}

TEST_CASE("pass count: constant in n for fixed delta") {
    std::mt19937_64 rng(23);
    std::vector<std::int64_t> passes;
    for (long n : {1000L, 4000L, 16000L}) {
        auto pts = random_points(rng, int(n), -100000, 100000);
        std::shuffle(pts.begin(), pts.end(), rng);
        auto res = run_on(pts, Rational(1, 3));
        CHECK(!res.fallback_used);
        passes.push_back(res.metrics.passes);
        CHECK(res.metrics.passes <= 6 * (3 + 1));
    }
    CHECK(passes[1] <= passes[0]);
    CHECK(passes[2] <= passes[1]);
}

TEST_CASE("space fallback: tiny n with huge h switches to the in-memory path") {
    // all points in convex position: h = n
    std::vector<Point> pts;
    for (long i = 0; i < 64; ++i) pts.emplace_back(i, -(i - 32) * (i - 32));
    auto want = oracle_hull(pts);
    Tape tape = make_point_tape(Tape::Mode::ReadOnly, pts);
    StreamRunConfig cfg;
    cfg.delta = Rational(1, 4);
    auto res = run_streaming(tape, cfg);
    CHECK(res.hull == want);
}

TEST_CASE("metrics report passes and n") {
    std::mt19937_64 rng(29);
    auto pts = random_points(rng, 500, -400, 400);
    auto res = run_on(pts, Rational(1, 3));
    CHECK(res.metrics.n == 500);
    CHECK(res.metrics.h == std::int64_t(res.hull.size()));
    CHECK(res.metrics.passes >= 1);
    CHECK(res.metrics.peak_space > 0);
}
