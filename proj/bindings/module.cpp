// Python bindings: hull computation in each model, calipers, and the
// structured instance generators. Coordinates cross the boundary as
// strings ("3", "-2.5", "7/3") so arbitrary-precision rationals survive
// the trip; the Python wrapper converts to fractions.Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "hullstream/calipers.hpp"
#include "hullstream/geom.hpp"
#include "hullstream/hard_instances.hpp"
#include "hullstream/io.hpp"
#include "hullstream/ram_hull.hpp"
#include "hullstream/stream_hull.hpp"
#include "hullstream/tape.hpp"
#include "hullstream/wstream_hull.hpp"

namespace py = pybind11;
using namespace hullstream;

namespace {

using StrPoint = std::pair<std::string, std::string>;

Point to_point(const StrPoint& sp) {
    return Point(parse_coordinate(sp.first), parse_coordinate(sp.second));
}

std::vector<Point> to_points(const std::vector<StrPoint>& in) {
    std::vector<Point> out;
    out.reserve(in.size());
    for (const auto& sp : in) out.push_back(to_point(sp));
    return out;
}

StrPoint from_point(const Point& p) {
    return {format_coordinate(p.x), format_coordinate(p.y)};
}

std::vector<StrPoint> from_points(const std::vector<Point>& in) {
    std::vector<StrPoint> out;
    out.reserve(in.size());
    for (const auto& p : in) out.push_back(from_point(p));
    return out;
}

py::dict metrics_dict(const RunMetrics& m) {
    py::dict d;
    d["algorithm"] = m.algorithm;
    d["n"] = m.n;
    d["h"] = m.h;
    d["passes"] = m.passes;
    d["peak_space"] = m.peak_space;
    return d;
}

}  // namespace

PYBIND11_MODULE(_hullstream, m) {
    m.doc() = "exact planar convex hulls in the RAM, read-only streaming, "
              "and writable-tape models";

    m.def(
        "oracle_hull",
        [](const std::vector<StrPoint>& pts) { return from_points(oracle_hull(to_points(pts))); },
        py::arg("points"),
        "Brute-force exact hull, clockwise from the leftmost point.");

    m.def(
        "ram_hull",
        [](const std::vector<StrPoint>& pts, long r) {
            return from_points(ram_convex_hull(to_points(pts), r));
        },
        py::arg("points"), py::arg("r") = 2,
        "Output-sensitive recursive hull with branching parameter r.");

    m.def(
        "stream_hull",
        [](const std::vector<StrPoint>& pts, const std::string& delta) {
            Tape tape = make_point_tape(Tape::Mode::ReadOnly, to_points(pts));
            auto res = run_streaming(tape, StreamRunConfig{parse_coordinate(delta)});
            py::dict d = metrics_dict(res.metrics);
            d["hull"] = from_points(res.hull);
            d["fallback_used"] = res.fallback_used;
            return d;
        },
        py::arg("points"), py::arg("delta") = "1/3",
        "Constant-pass hull over a read-only tape; returns hull plus pass "
        "and space metrics.");

    m.def(
        "wstream_hull",
        [](const std::vector<StrPoint>& pts, std::int64_t space,
           std::optional<std::uint64_t> seed) {
            Tape tape = make_point_tape(Tape::Mode::Writable, to_points(pts));
            auto res = seed ? run_wstream_rand(tape, space, *seed)
                            : run_wstream_det(tape, space);
            py::dict d = metrics_dict(res.metrics);
            d["hull"] = from_points(res.hull);
            d["subrounds"] = res.subrounds;
            d["splits"] = res.splits;
            return d;
        },
        py::arg("points"), py::arg("space") = 64, py::arg("seed") = py::none(),
        "Writable-tape hull under a space budget; deterministic unless a "
        "seed is given.");

    m.def(
        "diameter",
        [](const std::vector<StrPoint>& spts, std::int64_t space) {
            auto pts = to_points(spts);
            auto algo = [](const std::vector<Point>& p) { return oracle_hull(p); };
            ReplayableHull e = make_hull_stream(pts, algo);
            ReplayableHull s = make_hull_stream(pts, algo);
            auto res = diameter(e, s, space);
            py::dict d;
            d["squared"] = format_coordinate(res.squared);
            d["witness"] = std::pair{from_point(res.a), from_point(res.b)};
            return d;
        },
        py::arg("points"), py::arg("space") = 16,
        "Exact squared diameter by antipodal rotation over hull streams.");

    m.def(
        "min_enclosing_rectangle",
        [](const std::vector<StrPoint>& spts, std::int64_t space) {
            auto pts = to_points(spts);
            auto algo = [](const std::vector<Point>& p) { return oracle_hull(p); };
            ReplayableHull a = make_hull_stream(pts, algo);
            ReplayableHull b = make_hull_stream(pts, algo);
            ReplayableHull c = make_hull_stream(pts, algo);
            ReplayableHull d4 = make_hull_stream(pts, algo);
            auto res = min_enclosing_rectangle({&a, &b, &c, &d4}, space);
            py::dict d;
            d["area"] = format_coordinate(res.area);
            std::vector<StrPoint> corners;
            for (const auto& p : res.corners) corners.push_back(from_point(p));
            d["corners"] = corners;
            return d;
        },
        py::arg("points"), py::arg("space") = 16,
        "Minimum-area enclosing rectangle; one side lies on a hull edge.");

    m.def(
        "gen_disjointness",
        [](const std::vector<std::int64_t>& A, const std::vector<std::int64_t>& B,
           std::int64_t domain_n) {
            auto inst = gen_disjointness(A, B, domain_n);
            py::dict d;
            d["points"] = from_points(inst.points);
            d["expected_extremes"] = inst.expected_extremes();
            d["rho"] = format_coordinate(inst.rho);
            return d;
        },
        py::arg("A"), py::arg("B"), py::arg("domain_n"),
        "Two concentric half-circle point families whose extreme count "
        "reveals whether A and B intersect.");

    m.def(
        "pad_interior",
        [](const std::vector<StrPoint>& pts, std::int64_t total_n) {
            return from_points(pad_interior(to_points(pts), total_n));
        },
        py::arg("points"), py::arg("total_n"),
        "Append distinct interior dummy points near the origin.");

    py::register_exception<BudgetViolation>(m, "BudgetViolation");
}
