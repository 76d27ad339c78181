#include "hullstream/wstream_hull.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <queue>
#include <random>
#include <set>

#include "hullstream/quantile_summary.hpp"
#include "hullstream/space_meter.hpp"

namespace hullstream {

namespace {

// subproblem work stages carried in the descriptor
constexpr int kStageSlope = 0;    // scan pairs, pick a split slope
constexpr int kStageSupport = 1;  // scan for the slope's support point
constexpr int kStageRoute = 2;    // retag points to the two children
constexpr int kStageDiscard = 3;  // drop a dead subproblem's points
constexpr int kStageWait = 4;     // child blocked until parent routes

constexpr std::int64_t kDetCostPerLog = 2;  // c1, calibrated
constexpr std::int64_t kRandCost = 8;       // c2, calibrated

std::int64_t ceil_log2(std::int64_t n) {
    std::int64_t bits = 0, v = 1;
    while (v < n) {
        v <<= 1;
        ++bits;
    }
    return std::max<std::int64_t>(1, bits);
}

Point rotate_half(const Point& p) { return Point(Rational(-p.x), Rational(-p.y)); }

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t id) {
    std::uint64_t z = seed ^ (id * 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// support tie-break: higher intercept, then larger y, then smaller x
void fold_support(Point& best, const Point& cand, const Rational& sigma) {
    Rational ib = support_intercept(best, sigma);
    Rational ic = support_intercept(cand, sigma);
    int c = cmp(ic, ib);
    if (c > 0 || (c == 0 && (cand.y > best.y || (cand.y == best.y && cand.x < best.x))))
        best = cand;
}

struct SlopeState {
    std::optional<Point> pending;  // pair buffer, groups of two
    std::int64_t count = 0;
    std::int64_t q = 0;
    std::unique_ptr<QuantileSummary> summary;  // deterministic
    std::optional<Rational> reservoir;         // randomized
    std::mt19937_64 rng;
};

struct SupportState {
    Rational sigma_hat;
    Rational sigma_base;
    Point best_hat, best_base;
    std::int64_t count = 0;
};

struct RouteState {
    std::int64_t total = 0;
    std::int64_t left = 0;
    std::int64_t right = 0;
};

struct BatchEntry {
    SubproblemDesc desc;
    SlopeState slope;
    SupportState support;
    RouteState route;
};

struct DescOrder {
    bool operator()(const SubproblemDesc& a, const SubproblemDesc& b) const {
        if (a.depth != b.depth) return a.depth < b.depth;
        return a.id < b.id;
    }
};

class WEngine {
  public:
    WEngine(Tape& tape, const WStreamConfig& cfg) : tape_(tape), cfg_(cfg) {
        if (cfg_.enforce_budget) meter_ = SpaceMeter(cfg_.space_budget);
    }

    WStreamResult run() {
        const auto t0 = std::chrono::steady_clock::now();
        const std::int64_t pass0 = tape_.pass_count();
        if (tape_.mode() != Tape::Mode::Writable)
            throw std::invalid_argument("run_wstream: tape must be writable");
        n_ = static_cast<std::int64_t>(tape_.record_count());
        if (n_ < 1) throw std::invalid_argument("run_wstream: empty tape");

        cost_ = cfg_.per_subproblem_cost
                    ? *cfg_.per_subproblem_cost
                    : (cfg_.mode == WStreamMode::Deterministic ? wstream_det_cost(n_)
                                                               : wstream_rand_cost());
        if (cfg_.space_budget < cost_)
            throw BudgetViolation(cost_, "subround sizing: budget below one subproblem");
        batch_ = std::max<std::int64_t>(1, cfg_.space_budget / cost_);

        WStreamResult res;
        meter_.set_phase("setup");
        setup();
        while (live_ > 0) {
            meter_.set_phase("subround " + std::to_string(res.subrounds));
            subround();
            ++res.subrounds;
            if (res.subrounds > 16 * n_ + 64)
                throw std::logic_error("run_wstream: subround cap exceeded");
        }
        meter_.set_phase("extract");
        res.hull = extract();

        res.stats = stats_;
        res.subproblems = next_id_;
        res.splits = splits_;
        res.max_depth = max_depth_;
        res.batch_size = batch_;
        res.metrics.algorithm =
            cfg_.mode == WStreamMode::Deterministic ? "wstream-det" : "wstream-rand";
        res.metrics.n = n_;
        res.metrics.h = static_cast<std::int64_t>(res.hull.size());
        res.metrics.passes = tape_.pass_count() - pass0;
        res.metrics.peak_space = meter_.peak();
        res.metrics.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                       std::chrono::steady_clock::now() - t0)
                                       .count();
        res.metrics.params["space_budget"] = std::to_string(cfg_.space_budget);
        res.metrics.params["cost"] = std::to_string(cost_);
        res.metrics.params["batch"] = std::to_string(batch_);
        if (cfg_.mode == WStreamMode::Randomized)
            res.metrics.params["seed"] = std::to_string(cfg_.seed);
        return res;
    }

  private:
    // one pass: double each point into upper (id 0) and lower (id 1,
    // rotated) copies, then append the initial hull skeleton
    void setup() {
        std::optional<Point> lu, ru, ld, rd;
        auto upd = [&](std::optional<Point>& best, const Point& p, bool right, bool top) {
            if (!best) {
                best = p;
                return;
            }
            int c = cmp(p.x, best->x);
            if (right ? c > 0 : c < 0) {
                best = p;
            } else if (c == 0 && (top ? p.y > best->y : p.y < best->y)) {
                best = p;
            }
        };

        const std::size_t total = tape_.record_count();
        auto pass = tape_.begin_pass();
        for (std::size_t i = 0; i < total; ++i) {
            auto rec = pass.next();
            if (!rec || rec->tag != TapeRecord::Tag::PointRec)
                throw std::invalid_argument("run_wstream: expected a pure point tape");
            const Point& p = rec->point;
            upd(lu, p, false, true);
            upd(ru, p, true, true);
            upd(ld, p, false, false);
            upd(rd, p, true, false);
            pass.emit(TapeRecord::make_point(0, p));
            pass.emit(TapeRecord::make_point(1, rotate_half(p)));
        }

        auto emit_s = [&](std::int64_t id, const Point& a, const Point& b, int side) {
            SubproblemDesc d;
            d.id = id;
            d.depth = 0;
            d.left_anchor = a;
            d.right_anchor = b;
            d.side = side;
            d.stage = kStageSlope;
            pass.emit(TapeRecord::make_param(std::move(d)));
            ++live_;
        };

        pass.emit(TapeRecord::make_hull(0, *lu));
        if (*lu != *ru) {
            emit_s(0, *lu, *ru, 0);
            pass.emit(TapeRecord::make_hull(0, *ru));
        }
        if (*rd != *ru && *rd != *lu) pass.emit(TapeRecord::make_hull(1, *rd));
        if (*rd != *ld) emit_s(1, rotate_half(*rd), rotate_half(*ld), 1);
        if (*ld != *lu && *ld != *ru && *ld != *rd) pass.emit(TapeRecord::make_hull(1, *ld));

        if (pass.next()) throw std::logic_error("run_wstream: setup scan out of sync");
        next_id_ = 2;
    }

    void subround() {
        // pass 1: pick the batch, a bounded heap of the FIFO-smallest
        // (depth, id) pending descriptors; tape copied through unchanged
        std::priority_queue<SubproblemDesc, std::vector<SubproblemDesc>, DescOrder> heap;
        {
            auto pass = tape_.begin_pass();
            while (auto rec = pass.next()) {
                if (rec->tag == TapeRecord::Tag::ParamRec && rec->param->stage != kStageWait) {
                    heap.push(*rec->param);
                    meter_.charge(1);
                    if (static_cast<std::int64_t>(heap.size()) > batch_) {
                        heap.pop();
                        meter_.release(1);
                    }
                }
                pass.emit(std::move(*rec));
            }
        }

        std::map<std::int64_t, BatchEntry> batch;
        std::set<std::int64_t> flips;  // wait-children released this subround
        while (!heap.empty()) {
            BatchEntry e;
            e.desc = heap.top();
            heap.pop();
            max_depth_ = std::max(max_depth_, e.desc.depth);
            switch (e.desc.stage) {
                case kStageSlope:
                    meter_.charge(2);  // pair buffer + chosen slope
                    if (cfg_.mode == WStreamMode::Deterministic) {
                        e.slope.summary =
                            std::make_unique<QuantileSummary>(Rational(1, 4), &meter_);
                    } else {
                        e.slope.rng.seed(
                            mix_seed(cfg_.seed, static_cast<std::uint64_t>(e.desc.id)));
                    }
                    break;
                case kStageSupport: {
                    meter_.charge(4);  // two running supports + anchors
                    const Point& a = e.desc.left_anchor;
                    const Point& b = e.desc.right_anchor;
                    e.support.sigma_base = slope(a, b).value();
                    e.support.sigma_hat =
                        e.desc.sigma ? e.desc.sigma->value() : e.support.sigma_base;
                    e.support.best_hat = a;
                    fold_support(e.support.best_hat, b, e.support.sigma_hat);
                    e.support.best_base = a;
                    fold_support(e.support.best_base, b, e.support.sigma_base);
                    break;
                }
                default:
                    meter_.charge(2);  // split point + child ids
                    break;
            }
            batch.emplace(e.desc.id, std::move(e));
        }

        // pass 2: process the batch's points, then rewrite its skeleton
        // records in place when the scan reaches them
        auto pass = tape_.begin_pass();
        while (auto rec = pass.next()) {
            if (rec->tag == TapeRecord::Tag::PointRec) {
                auto it = batch.find(rec->subproblem_id);
                if (it == batch.end()) {
                    pass.emit(std::move(*rec));
                    continue;
                }
                process_point(it->second, rec->point, pass);
            } else if (rec->tag == TapeRecord::Tag::ParamRec) {
                auto it = batch.find(rec->param->id);
                if (it != batch.end()) {
                    resolve(it->second, pass, flips);
                } else if (rec->param->stage == kStageWait &&
                           flips.count(rec->param->id)) {
                    SubproblemDesc d = *rec->param;
                    d.stage = kStageSlope;
                    pass.emit(TapeRecord::make_param(std::move(d)));
                } else {
                    pass.emit(std::move(*rec));
                }
            } else {
                pass.emit(std::move(*rec));
            }
        }

        for (auto& [id, e] : batch) {
            meter_.release(1);  // heap descriptor
            switch (e.desc.stage) {
                case kStageSlope: meter_.release(2); break;
                case kStageSupport: meter_.release(4); break;
                default: meter_.release(2); break;
            }
        }
    }

    void process_point(BatchEntry& e, const Point& p, Tape::Pass& pass) {
        switch (e.desc.stage) {
            case kStageSlope: {
                ++e.slope.count;
                if (e.slope.pending) {
                    if (e.slope.pending->x != p.x) {
                        SlopeKey s = slope(*e.slope.pending, p);
                        ++e.slope.q;
                        if (cfg_.mode == WStreamMode::Deterministic) {
                            e.slope.summary->insert(s);
                        } else {
                            // reservoir of one: uniform over the slopes seen
                            std::uniform_int_distribution<std::int64_t> d(0, e.slope.q - 1);
                            if (d(e.slope.rng) == 0) e.slope.reservoir = s.value();
                        }
                    }
                    e.slope.pending.reset();
                } else {
                    e.slope.pending = p;
                }
                pass.emit(TapeRecord::make_point(e.desc.id, p));
                break;
            }
            case kStageSupport:
                ++e.support.count;
                fold_support(e.support.best_hat, p, e.support.sigma_hat);
                fold_support(e.support.best_base, p, e.support.sigma_base);
                pass.emit(TapeRecord::make_point(e.desc.id, p));
                break;
            case kStageRoute: {
                ++e.route.total;
                const Point& a = e.desc.left_anchor;
                const Point& b = e.desc.right_anchor;
                const Point& m = *e.desc.split;
                if (p.x > a.x && p.x < m.x &&
                    orientation(a, m, p) == Orientation::CounterClockwise) {
                    ++e.route.left;
                    pass.emit(TapeRecord::make_point(e.desc.child_left, p));
                } else if (p.x > m.x && p.x < b.x &&
                           orientation(m, b, p) == Orientation::CounterClockwise) {
                    ++e.route.right;
                    pass.emit(TapeRecord::make_point(e.desc.child_right, p));
                }
                // anything else is settled: on, below, or outside the windows
                break;
            }
            case kStageDiscard:
                break;  // dropped
            default:
                pass.emit(TapeRecord::make_point(e.desc.id, p));
                break;
        }
    }

    void resolve(BatchEntry& e, Tape::Pass& pass, std::set<std::int64_t>& flips) {
        switch (e.desc.stage) {
            case kStageSlope: {
                if (e.slope.count == 0) {
                    --live_;  // nothing inside the window
                    return;
                }
                SubproblemDesc d = e.desc;
                d.stage = kStageSupport;
                if (cfg_.mode == WStreamMode::Deterministic) {
                    if (e.slope.q > 0)
                        d.sigma = e.slope.summary->query((e.slope.q + 1) / 2);
                } else if (e.slope.reservoir) {
                    d.sigma = SlopeKey::finite(*e.slope.reservoir);
                }
                pass.emit(TapeRecord::make_param(std::move(d)));
                break;
            }
            case kStageSupport: {
                const Point& a = e.desc.left_anchor;
                const Point& b = e.desc.right_anchor;
                Point m = e.support.best_hat;
                if (m == a || m == b) m = e.support.best_base;
                if (m == a || m == b) {
                    // no point strictly above the anchor line
                    if (e.support.count == 0) {
                        --live_;
                        return;
                    }
                    SubproblemDesc d = e.desc;
                    d.stage = kStageDiscard;
                    pass.emit(TapeRecord::make_param(std::move(d)));
                    break;
                }
                ++splits_;
                SubproblemDesc parent = e.desc;
                parent.stage = kStageRoute;
                parent.split = m;
                parent.sigma.reset();
                parent.child_left = next_id_++;
                parent.child_right = next_id_++;

                SubproblemDesc left;
                left.id = parent.child_left;
                left.depth = parent.depth + 1;
                left.left_anchor = a;
                left.right_anchor = m;
                left.side = parent.side;
                left.stage = kStageWait;

                SubproblemDesc right;
                right.id = parent.child_right;
                right.depth = parent.depth + 1;
                right.left_anchor = m;
                right.right_anchor = b;
                right.side = parent.side;
                right.stage = kStageWait;

                Point out = parent.side == 1 ? rotate_half(m) : m;
                pass.emit(TapeRecord::make_param(std::move(parent)));
                pass.emit(TapeRecord::make_param(std::move(left)));
                pass.emit(TapeRecord::make_hull(e.desc.id, std::move(out)));
                pass.emit(TapeRecord::make_param(std::move(right)));
                live_ += 2;
                break;
            }
            case kStageRoute:
                stats_.note_child(static_cast<std::size_t>(e.route.left),
                                  static_cast<std::size_t>(e.route.total), 1,
                                  Rational(1, 4));
                stats_.note_child(static_cast<std::size_t>(e.route.right),
                                  static_cast<std::size_t>(e.route.total), 1,
                                  Rational(1, 4));
                flips.insert(e.desc.child_left);
                flips.insert(e.desc.child_right);
                --live_;  // parent descriptor retired
                break;
            case kStageDiscard:
                --live_;
                break;
            default:
                pass.emit(TapeRecord::make_param(e.desc));
                break;
        }
    }

    std::vector<Point> extract() {
        std::vector<Point> hull;
        auto pass = tape_.begin_pass();
        while (auto rec = pass.next()) {
            if (rec->tag == TapeRecord::Tag::HullRec) hull.push_back(rec->point);
            pass.emit(std::move(*rec));
        }
        return hull;
    }

    Tape& tape_;
    WStreamConfig cfg_;
    SpaceMeter meter_;
    RecursionStats stats_;
    std::int64_t n_ = 0;
    std::int64_t cost_ = 0;
    std::int64_t batch_ = 1;
    std::int64_t live_ = 0;
    std::int64_t next_id_ = 2;
    std::int64_t splits_ = 0;
    int max_depth_ = 0;
};

}  // namespace

std::int64_t wstream_det_cost(std::int64_t n) { return kDetCostPerLog * ceil_log2(n); }
std::int64_t wstream_rand_cost() { return kRandCost; }

WStreamResult run_wstream(Tape& tape, const WStreamConfig& config) {
    return WEngine(tape, config).run();
}

WStreamResult run_wstream_det(Tape& tape, std::int64_t space_budget) {
    WStreamConfig cfg;
    cfg.space_budget = space_budget;
    cfg.mode = WStreamMode::Deterministic;
    return run_wstream(tape, cfg);
}

WStreamResult run_wstream_rand(Tape& tape, std::int64_t space_budget, std::uint64_t seed) {
    WStreamConfig cfg;
    cfg.space_budget = space_budget;
    cfg.mode = WStreamMode::Randomized;
    cfg.seed = seed;
    return run_wstream(tape, cfg);
}

std::optional<Point> split_degenerate_guard(const std::vector<Point>& pz, const Point& a,
                                            const Point& b, const Point& median_support) {
    if (median_support != a && median_support != b) return median_support;
    Rational base = slope(a, b).value();
    Point best = a;
    fold_support(best, b, base);
    for (const Point& p : pz) fold_support(best, p, base);
    if (best == a || best == b) return std::nullopt;
    return best;
}

}  // namespace hullstream
