#include "hullstream/hard_instances.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace hullstream {

namespace {

Rational dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }

std::vector<std::int64_t> checked_index_set(const std::vector<std::int64_t>& ids,
                                            std::int64_t domain_n) {
    std::vector<std::int64_t> out = ids;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (std::int64_t i : out) {
        if (i < 1 || i > domain_n)
            throw std::invalid_argument("index " + std::to_string(i) + " outside [1," +
                                        std::to_string(domain_n) + "]");
    }
    return out;
}

std::vector<bool> index_mask(const std::vector<std::int64_t>& ids, std::int64_t domain_n) {
    std::vector<bool> mask(static_cast<std::size_t>(domain_n), false);
    for (std::int64_t i : ids) mask[static_cast<std::size_t>(i - 1)] = true;
    return mask;
}

// max consecutive dot product along an angularly sorted unit-circle
// sequence; every other pairwise dot is smaller, so rho above this
// value puts each tangent line strictly beyond all other points
Rational max_neighbor_dot(const std::vector<Point>& dirs) {
    Rational best(-1);
    for (std::size_t i = 0; i + 1 < dirs.size(); ++i) {
        Rational d = dot(dirs[i], dirs[i + 1]);
        if (d > best) best = std::move(d);
    }
    return best;
}

Rational chord_distance_sq_max(const std::vector<Point>& seq) {
    Rational best(0);
    for (std::size_t i = 0; i + 2 < seq.size(); ++i) {
        const Point& p = seq[i];
        const Point& q = seq[i + 2];
        Rational num = p.x * q.y - p.y * q.x;
        Rational d = num * num / squared_distance(p, q);
        if (d > best) best = std::move(d);
    }
    return best;
}

nlohmann::json rational_json(const Rational& r) { return r.get_str(); }

nlohmann::json index_json(const std::vector<std::int64_t>& ids) {
    nlohmann::json j = nlohmann::json::array();
    for (std::int64_t i : ids) j.push_back(i);
    return j;
}

}  // namespace

Point circle_point(const Rational& t, const Rational& radius) {
    Rational t2 = t * t;
    Rational den = Rational(1) + t2;
    return Point(radius * (Rational(1) - t2) / den, radius * Rational(2) * t / den);
}

std::vector<Point> rational_half_circle(std::int64_t m, const Rational& radius) {
    if (m < 1) throw std::invalid_argument("rational_half_circle: m must be >= 1");
    if (sgn(radius) <= 0) throw std::invalid_argument("rational_half_circle: radius must be > 0");

    const double pi = std::acos(-1.0);
    for (long den = 1L << 20;; den <<= 1) {
        std::vector<Rational> ts;
        ts.reserve(static_cast<std::size_t>(m));
        bool ok = true;
        for (std::int64_t j = 1; j <= m; ++j) {
            double theta = pi * static_cast<double>(j) / static_cast<double>(m + 1);
            long num = std::lround(std::tan(theta / 2) * static_cast<double>(den));
            num = std::max(1L, num);
            Rational t(num, den);
            t.canonicalize();
            if (!ts.empty() && t <= ts.back()) {
                ok = false;
                break;
            }
            ts.push_back(std::move(t));
        }
        if (!ok) continue;
        std::vector<Point> out;
        out.reserve(ts.size());
        for (const Rational& t : ts) out.push_back(circle_point(t, radius));
        return out;
    }
}

std::int64_t DisjointnessInstance::expected_extremes() const {
    std::set<std::int64_t> a(A.begin(), A.end());
    std::int64_t b_only = 0;
    for (std::int64_t i : B)
        if (!a.count(i)) ++b_only;
    return static_cast<std::int64_t>(A.size()) + b_only + 2;
}

std::string DisjointnessInstance::sidecar_json() const {
    nlohmann::json j;
    j["kind"] = "disjointness";
    j["domain_n"] = domain_n;
    j["A"] = index_json(A);
    j["B"] = index_json(B);
    j["rho"] = rational_json(rho);
    j["k_max_sq"] = rational_json(k_max_sq);
    return j.dump(2);
}

DisjointnessInstance gen_disjointness(const std::vector<std::int64_t>& A,
                                      const std::vector<std::int64_t>& B,
                                      std::int64_t domain_n) {
    if (domain_n < 1) throw std::invalid_argument("gen_disjointness: domain_n must be >= 1");
    DisjointnessInstance inst;
    inst.domain_n = domain_n;
    inst.A = checked_index_set(A, domain_n);
    inst.B = checked_index_set(B, domain_n);
    inst.outer = rational_half_circle(domain_n, Rational(1));

    std::vector<Point> seq;
    seq.push_back(inst.anchor_right);
    seq.insert(seq.end(), inst.outer.begin(), inst.outer.end());
    seq.push_back(inst.anchor_left);

    Rational d_max = max_neighbor_dot(seq);
    inst.rho = (d_max + Rational(1)) / Rational(2);
    inst.k_max_sq = chord_distance_sq_max(seq);
    if (inst.rho * inst.rho <= inst.k_max_sq || inst.rho >= 1)
        throw std::logic_error("gen_disjointness: separation radius out of range");

    inst.inner.reserve(inst.outer.size());
    for (const Point& a : inst.outer)
        inst.inner.emplace_back(inst.rho * a.x, inst.rho * a.y);

    for (std::int64_t i : inst.A) inst.points.push_back(inst.outer[static_cast<std::size_t>(i - 1)]);
    for (std::int64_t i : inst.B) inst.points.push_back(inst.inner[static_cast<std::size_t>(i - 1)]);
    inst.points.push_back(inst.anchor_right);
    inst.points.push_back(inst.anchor_left);
    return inst;
}

std::string FourCopyInstance::sidecar_json() const {
    nlohmann::json j;
    j["kind"] = "four-copy";
    j["domain_n"] = domain_n;
    j["A"] = index_json(A);
    j["B"] = index_json(B);
    j["rho"] = rational_json(rho);
    return j.dump(2);
}

FourCopyInstance gen_four_copy(const std::vector<std::int64_t>& A,
                               const std::vector<std::int64_t>& B, std::int64_t domain_n) {
    if (domain_n < 1) throw std::invalid_argument("gen_four_copy: domain_n must be >= 1");
    FourCopyInstance inst;
    inst.domain_n = domain_n;
    inst.A = checked_index_set(A, domain_n);
    inst.B = checked_index_set(B, domain_n);

    // arc endpoints in tan-half-angle parameters 0, 2/5, 1, 5/2, +inf
    inst.boundary = {Point(1, 0), circle_point(Rational(2, 5), Rational(1)), Point(0, 1),
                     circle_point(Rational(5, 2), Rational(1)), Point(-1, 0)};

    auto arc = [&](const Rational& lo, const Rational& hi) {
        std::vector<Point> pts;
        for (std::int64_t j = 1; j <= domain_n; ++j) {
            Rational t = lo + (hi - lo) * Rational(j) / Rational(domain_n + 1);
            pts.push_back(circle_point(t, Rational(1)));
        }
        return pts;
    };
    auto mirror = [](const std::vector<Point>& pts) {
        std::vector<Point> out;
        for (const Point& p : pts) out.emplace_back(Rational(-p.x), p.y);
        return out;
    };

    inst.copies[0].outer = arc(Rational(0), Rational(2, 5));
    inst.copies[1].outer = arc(Rational(2, 5), Rational(1));
    inst.copies[2].outer = mirror(inst.copies[1].outer);
    inst.copies[3].outer = mirror(inst.copies[0].outer);

    // angular order on the upper unit semicircle is descending x
    std::vector<Point> seq;
    for (const Point& p : inst.boundary) seq.push_back(p);
    for (const auto& c : inst.copies) seq.insert(seq.end(), c.outer.begin(), c.outer.end());
    std::sort(seq.begin(), seq.end(),
              [](const Point& a, const Point& b) { return a.x > b.x; });

    Rational d_max = max_neighbor_dot(seq);
    inst.rho = (d_max + Rational(1)) / Rational(2);
    if (d_max >= 1 || inst.rho >= 1)
        throw std::logic_error("gen_four_copy: separation radius out of range");

    const std::vector<bool> in_a = index_mask(inst.A, domain_n);
    const std::vector<bool> in_b = index_mask(inst.B, domain_n);
    for (int c = 0; c < 4; ++c) {
        FourCopyInstance::Copy& copy = inst.copies[static_cast<std::size_t>(c)];
        copy.inner.reserve(copy.outer.size());
        for (const Point& a : copy.outer)
            copy.inner.emplace_back(inst.rho * a.x, inst.rho * a.y);
        copy.sel_outer.resize(static_cast<std::size_t>(domain_n));
        copy.sel_inner.resize(static_cast<std::size_t>(domain_n));
        const bool flip_a = (c == 1 || c == 3);
        const bool flip_b = (c == 2 || c == 3);
        for (std::size_t i = 0; i < static_cast<std::size_t>(domain_n); ++i) {
            copy.sel_outer[i] = flip_a ? !in_a[i] : in_a[i];
            copy.sel_inner[i] = flip_b ? !in_b[i] : in_b[i];
        }
    }

    for (const auto& c : inst.copies)
        for (std::size_t i = 0; i < c.outer.size(); ++i)
            if (c.sel_outer[i]) inst.points.push_back(c.outer[i]);
    for (const auto& c : inst.copies)
        for (std::size_t i = 0; i < c.inner.size(); ++i)
            if (c.sel_inner[i]) inst.points.push_back(c.inner[i]);
    for (const Point& p : inst.boundary) inst.points.push_back(p);
    return inst;
}

std::vector<Point> pad_interior(const std::vector<Point>& points, std::int64_t total_n) {
    const std::int64_t have = static_cast<std::int64_t>(points.size());
    if (total_n < have) throw std::invalid_argument("pad_interior: total_n below point count");
    std::vector<Point> out = points;
    const std::int64_t m = total_n - have;
    for (std::int64_t j = 0; j < m; ++j) {
        Rational x(j, 8 * std::max<std::int64_t>(m, 1));
        x.canonicalize();
        out.emplace_back(std::move(x), Rational(1, 8));
    }
    return out;
}

}  // namespace hullstream
