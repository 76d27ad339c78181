#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>

#include "hullstream/calipers.hpp"
#include "hullstream/geom.hpp"
#include "hullstream/hard_instances.hpp"
#include "hullstream/io.hpp"
#include "hullstream/metrics.hpp"
#include "hullstream/ram_hull.hpp"
#include "hullstream/space_meter.hpp"
#include "hullstream/stream_hull.hpp"
#include "hullstream/tape.hpp"
#include "hullstream/wstream_hull.hpp"

namespace hs = hullstream;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;
constexpr int kExitParams = 4;

std::vector<std::int64_t> parse_index_list(const std::string& csv) {
    std::vector<std::int64_t> out;
    std::string cur;
    std::istringstream is(csv);
    while (std::getline(is, cur, ',')) {
        if (!cur.empty()) out.push_back(std::stoll(cur));
    }
    return out;
}

std::vector<hs::Point> random_disk(std::int64_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const long den = 1L << 20;
    std::uniform_int_distribution<long> coord(-den, den);
    std::set<hs::Point> seen;
    std::vector<hs::Point> out;
    while (static_cast<std::int64_t>(out.size()) < n) {
        hs::Rational x(coord(rng), den);
        hs::Rational y(coord(rng), den);
        x.canonicalize();
        y.canonicalize();
        if (x * x + y * y >= 1) continue;
        hs::Point p(std::move(x), std::move(y));
        if (seen.insert(p).second) out.push_back(std::move(p));
    }
    return out;
}

struct HullRun {
    std::vector<hs::Point> hull;
    hs::RunMetrics metrics;
};

HullRun run_algorithm(const std::string& algo, const std::vector<hs::Point>& raw,
                      const hs::Rational& delta, long r, std::int64_t space,
                      std::optional<std::uint64_t> seed) {
    std::vector<hs::Point> pts = hs::dedup_points(raw);
    HullRun out;
    if (algo == "oracle" || algo == "ram") {
        auto t0 = std::chrono::steady_clock::now();
        out.hull = algo == "oracle" ? hs::oracle_hull(pts) : hs::ram_convex_hull(pts, r);
        out.metrics.algorithm = algo;
        out.metrics.n = static_cast<std::int64_t>(pts.size());
        out.metrics.h = static_cast<std::int64_t>(out.hull.size());
        out.metrics.passes = 1;
        out.metrics.peak_space = static_cast<std::int64_t>(pts.size());
        out.metrics.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                       std::chrono::steady_clock::now() - t0)
                                       .count();
        if (algo == "ram") out.metrics.params["r"] = std::to_string(r);
        return out;
    }
    if (algo == "stream") {
        hs::Tape tape = hs::make_point_tape(hs::Tape::Mode::ReadOnly, pts);
        hs::StreamRunConfig cfg;
        cfg.delta = delta;
        auto res = hs::run_streaming(tape, cfg);
        out.hull = std::move(res.hull);
        out.metrics = std::move(res.metrics);
        return out;
    }
    if (algo == "wstream-det" || algo == "wstream-rand") {
        hs::Tape tape = hs::make_point_tape(hs::Tape::Mode::Writable, pts);
        hs::WStreamConfig cfg;
        cfg.space_budget = space;
        if (algo == "wstream-rand") {
            if (!seed) throw CLI::ValidationError("--seed is required for wstream-rand");
            cfg.mode = hs::WStreamMode::Randomized;
            cfg.seed = *seed;
        }
        auto res = hs::run_wstream(tape, cfg);
        out.hull = std::move(res.hull);
        out.metrics = std::move(res.metrics);
        return out;
    }
    throw CLI::ValidationError("unknown algorithm '" + algo + "'");
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    for (const auto& l : lines) os << l << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact planar convex hulls in bounded-memory streaming models"};
    app.require_subcommand(1);

    // hull
    std::string hull_input, hull_algo = "oracle", hull_delta = "1/3";
    std::string hull_out, hull_metrics;
    long hull_r = 2;
    std::int64_t hull_space = 64;
    std::optional<std::uint64_t> hull_seed;
    auto* hull = app.add_subcommand("hull", "compute a convex hull");
    hull->add_option("input", hull_input)->required();
    hull->add_option("--algo", hull_algo)
        ->check(CLI::IsMember({"oracle", "ram", "stream", "wstream-det", "wstream-rand"}));
    hull->add_option("--delta", hull_delta);
    hull->add_option("--r", hull_r);
    hull->add_option("--space", hull_space);
    hull->add_option("--seed", hull_seed);
    hull->add_option("-o,--out", hull_out);
    hull->add_option("--metrics", hull_metrics);

    // gen
    std::string gen_kind, gen_out = "points.txt", gen_a, gen_b;
    std::int64_t gen_n = 16;
    std::uint64_t gen_seed = 1;
    std::int64_t gen_pad = 0;
    auto* gen = app.add_subcommand("gen", "generate instances");
    gen->add_option("kind", gen_kind)
        ->required()
        ->check(CLI::IsMember({"random-disk", "disjointness", "four-copy"}));
    gen->add_option("--n", gen_n);
    gen->add_option("--A", gen_a);
    gen->add_option("--B", gen_b);
    gen->add_option("--seed", gen_seed);
    gen->add_option("--pad", gen_pad);
    gen->add_option("-o,--out", gen_out);

    // calipers
    std::string cal_task, cal_input, cal_algo = "oracle", cal_out, cal_metrics;
    std::int64_t cal_space = 16;
    auto* cal = app.add_subcommand("calipers", "diameter / min enclosing rectangle");
    cal->add_option("task", cal_task)->required()->check(CLI::IsMember({"diameter", "mer"}));
    cal->add_option("input", cal_input)->required();
    cal->add_option("--space", cal_space);
    cal->add_option("--algo", cal_algo)->check(CLI::IsMember({"oracle", "ram"}));
    cal->add_option("-o,--out", cal_out);
    cal->add_option("--metrics", cal_metrics);

    // bench
    std::string bench_suite = "all", bench_out = ".";
    auto* bench = app.add_subcommand("bench", "pass-complexity sweeps, CSV output");
    bench->add_option("--suite", bench_suite)
        ->check(CLI::IsMember({"stream", "wstream", "all", "none"}));
    bench->add_option("--out", bench_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*hull) {
            std::vector<hs::Point> pts;
            try {
                pts = hs::load_point_file(hull_input);
            } catch (const hs::ParseError& e) {
                std::cerr << "parse error: " << e.what() << "\n";
                return kExitParse;
            }
            if (pts.empty()) {
                std::cerr << "parse error: no points in '" << hull_input << "'\n";
                return kExitParse;
            }
            hs::Rational delta = hs::parse_coordinate(hull_delta);
            HullRun run = run_algorithm(hull_algo, pts, delta, hull_r, hull_space, hull_seed);
            std::string out = hull_out.empty() ? hull_input + ".hull" : hull_out;
            std::string met = hull_metrics.empty() ? hull_input + ".metrics.json" : hull_metrics;
            std::vector<std::string> lines;
            for (const auto& p : run.hull) lines.push_back(hs::format_point(p));
            write_lines(out, lines);
            std::string js = hs::metrics_to_json(run.metrics);
            write_lines(met, {js});
            std::cout << js << "\n";
            return kExitOk;
        }

        if (*gen) {
            if (gen_kind == "random-disk") {
                auto pts = random_disk(gen_n, gen_seed);
                hs::write_point_file(gen_out, pts);
            } else {
                auto A = parse_index_list(gen_a);
                auto B = parse_index_list(gen_b);
                std::vector<hs::Point> pts;
                std::string sidecar;
                if (gen_kind == "disjointness") {
                    auto inst = hs::gen_disjointness(A, B, gen_n);
                    pts = inst.points;
                    sidecar = inst.sidecar_json();
                } else {
                    auto inst = hs::gen_four_copy(A, B, gen_n);
                    pts = inst.points;
                    sidecar = inst.sidecar_json();
                }
                if (gen_pad > 0) pts = hs::pad_interior(pts, gen_pad);
                hs::write_point_file(gen_out, pts);
                write_lines(gen_out + ".json", {sidecar});
            }
            return kExitOk;
        }

        if (*cal) {
            std::vector<hs::Point> pts;
            try {
                pts = hs::load_point_file(cal_input);
            } catch (const hs::ParseError& e) {
                std::cerr << "parse error: " << e.what() << "\n";
                return kExitParse;
            }
            if (pts.empty()) {
                std::cerr << "parse error: no points in '" << cal_input << "'\n";
                return kExitParse;
            }
            pts = hs::dedup_points(pts);
            auto algo = [&](const std::vector<hs::Point>& in) {
                return cal_algo == "ram" ? hs::ram_convex_hull(in, 2) : hs::oracle_hull(in);
            };
            auto t0 = std::chrono::steady_clock::now();
            hs::RunMetrics m;
            std::vector<std::string> lines;
            std::size_t replays = 0;
            if (cal_task == "diameter") {
                hs::ReplayableHull s1 = hs::make_hull_stream(pts, algo);
                hs::ReplayableHull s2 = hs::make_hull_stream(pts, algo);
                auto res = hs::diameter(s1, s2, cal_space);
                lines.push_back(hs::format_coordinate(res.squared));
                lines.push_back(hs::format_point(res.a) + " " + hs::format_point(res.b));
                m.h = static_cast<std::int64_t>(res.hull_size);
                replays = s1.replays() + s2.replays();
            } else {
                hs::ReplayableHull s1 = hs::make_hull_stream(pts, algo);
                hs::ReplayableHull s2 = hs::make_hull_stream(pts, algo);
                hs::ReplayableHull s3 = hs::make_hull_stream(pts, algo);
                hs::ReplayableHull s4 = hs::make_hull_stream(pts, algo);
                auto res = hs::min_enclosing_rectangle({&s1, &s2, &s3, &s4}, cal_space);
                lines.push_back(hs::format_coordinate(res.area));
                for (const auto& c : res.corners) lines.push_back(hs::format_point(c));
                m.h = static_cast<std::int64_t>(res.hull_size);
                replays = s1.replays() + s2.replays() + s3.replays() + s4.replays();
            }
            m.algorithm = "calipers-" + cal_task;
            m.n = static_cast<std::int64_t>(pts.size());
            m.passes = static_cast<std::int64_t>(replays);
            m.peak_space = cal_space;
            m.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
            m.params["space"] = std::to_string(cal_space);
            std::string out = cal_out.empty() ? cal_input + "." + cal_task + ".txt" : cal_out;
            std::string met =
                cal_metrics.empty() ? cal_input + "." + cal_task + ".metrics.json" : cal_metrics;
            write_lines(out, lines);
            write_lines(met, {hs::metrics_to_json(m)});
            std::cout << hs::metrics_to_json(m) << "\n";
            return kExitOk;
        }

        if (*bench) {
            std::vector<std::string> rows = {"algo,n,h,param,passes,peak_space,time_ms"};
            auto add = [&](const hs::RunMetrics& m, const std::string& param) {
                rows.push_back(m.algorithm + "," + std::to_string(m.n) + "," +
                               std::to_string(m.h) + "," + param + "," +
                               std::to_string(m.passes) + "," + std::to_string(m.peak_space) +
                               "," + std::to_string(m.wall_time_ms));
            };
            if (bench_suite == "stream" || bench_suite == "all") {
                for (const char* ds : {"1/4", "1/3", "1/2"}) {
                    for (std::int64_t n : {1000, 10000, 100000}) {
                        auto pts = random_disk(n, 7);
                        hs::Tape tape = hs::make_point_tape(hs::Tape::Mode::ReadOnly, pts);
                        hs::StreamRunConfig cfg;
                        cfg.delta = hs::parse_coordinate(ds);
                        auto res = hs::run_streaming(tape, cfg);
                        add(res.metrics, ds);
                    }
                }
            }
            if (bench_suite == "wstream" || bench_suite == "all") {
                std::vector<std::int64_t> idx;
                for (std::int64_t i = 1; i <= 64; ++i) idx.push_back(i);
                auto inst = hs::gen_disjointness(idx, {}, 64);
                const std::int64_t c = hs::wstream_det_cost(
                    static_cast<std::int64_t>(inst.points.size()));
                for (std::int64_t mult : {1, 2, 4, 8}) {
                    hs::Tape tape = hs::make_point_tape(hs::Tape::Mode::Writable, inst.points);
                    auto res = hs::run_wstream_det(tape, mult * c);
                    add(res.metrics, std::to_string(mult * c));
                }
            }
            write_lines(bench_out + "/bench.csv", rows);
            return kExitOk;
        }
    } catch (const hs::BudgetViolation& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return kExitParams;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return kExitParams;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
