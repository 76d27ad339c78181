#include "hullstream/stream_hull.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

namespace hullstream {

namespace {

std::int64_t rational_floor(const Rational& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q.get_si();
}

std::int64_t ceil_log2(std::int64_t n) {
    std::int64_t bits = 0;
    std::int64_t v = 1;
    while (v < n) {
        v <<= 1;
        ++bits;
    }
    return std::max<std::int64_t>(1, bits);
}

// support comparator: higher intercept, then larger y, then smaller x
const Point* better_support(const Point* p, const Point* q, const Rational& sigma) {
    Rational ip = support_intercept(*p, sigma);
    Rational iq = support_intercept(*q, sigma);
    int c = cmp(iq, ip);
    if (c > 0) return q;
    if (c < 0) return p;
    if (q->y != p->y) return q->y > p->y ? q : p;
    return q->x < p->x ? q : p;
}

}  // namespace

long stream_branching(std::int64_t n, const Rational& delta) {
    double d = mpq_get_d(delta.get_mpq_t());
    double r = std::pow(static_cast<double>(n), d);
    long out = static_cast<long>(std::ceil(r - 1e-9));
    return std::max<long>(1, out);
}

// ---------------------------------------------------------------------------
// SlopeSketch

SlopeSketch::SlopeSketch(long r, Rational epsilon, SpaceMeter* meter)
    : r_(r), meter_(meter), summary_(std::move(epsilon), meter) {
    if (r_ < 1) throw std::invalid_argument("SlopeSketch: r must be >= 1");
}

SlopeSketch::~SlopeSketch() {
    if (meter_) {
        meter_->release(static_cast<std::int64_t>(buffer_.size()));
        meter_->release(static_cast<std::int64_t>(first_group_.size()));
        meter_->release(static_cast<std::int64_t>(sigmas_.size()));
    }
}

void SlopeSketch::push(const Point& p) {
    if (finished_) throw std::logic_error("SlopeSketch: push after finish");
    buffer_.push_back(p);
    ++points_seen_;
    if (meter_) meter_->charge(1);
    if (buffer_.size() == static_cast<std::size_t>(r_) + 1) flush_group();
}

void SlopeSketch::flush_group() {
    if (buffer_.empty()) return;
    if (first_group_.empty() && single_group_) {
        first_group_ = buffer_;
        if (meter_) meter_->charge(static_cast<std::int64_t>(first_group_.size()));
    } else {
        single_group_ = false;
        if (meter_ && !first_group_.empty())
            meter_->release(static_cast<std::int64_t>(first_group_.size()));
        first_group_.clear();
    }
    HullChain chain = upper_hull_small(buffer_);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        summary_.insert(slope(chain[i], chain[i + 1]));
        ++q_count_;
    }
    if (meter_) meter_->release(static_cast<std::int64_t>(buffer_.size()));
    buffer_.clear();
}

void SlopeSketch::finish() {
    if (finished_) return;
    finished_ = true;
    flush_group();
    if (q_count_ > 0) {
        const std::int64_t q = q_count_;
        for (long k = 1; k <= r_; ++k) {
            Rational target = Rational(k) * Rational(static_cast<long>(q)) / Rational(r_ + 1) +
                              Rational(1, 2);
            std::int64_t rank = std::clamp<std::int64_t>(rational_floor(target), 1, q);
            sigmas_.push_back(summary_.query(rank));
        }
        if (meter_) meter_->charge(static_cast<std::int64_t>(sigmas_.size()));
    }
}

// ---------------------------------------------------------------------------
// SupportScan

SupportScan::SupportScan(std::vector<SlopeKey> sigmas_ascending, long r, SpaceMeter* meter)
    : sigmas_(std::move(sigmas_ascending)), r_(r), meter_(meter) {
    for (const SlopeKey& s : sigmas_) {
        if (!s.is_finite()) throw std::invalid_argument("SupportScan: sigmas must be finite");
    }
    best_.resize(sigmas_.size());
    if (meter_) meter_->charge(static_cast<std::int64_t>(sigmas_.size()));
}

SupportScan::~SupportScan() {
    if (meter_) {
        meter_->release(static_cast<std::int64_t>(sigmas_.size()));
        meter_->release(static_cast<std::int64_t>(buffer_.size()));
        std::int64_t held = 0;
        for (const auto& b : best_) held += b.has_value() ? 1 : 0;
        meter_->release(held);
        meter_->release(static_cast<std::int64_t>(supports_.size()));
    }
}

void SupportScan::push(const Point& p) {
    if (finished_) throw std::logic_error("SupportScan: push after finish");
    buffer_.push_back(p);
    if (meter_) meter_->charge(1);
    if (buffer_.size() == static_cast<std::size_t>(r_) + 1) flush_group();
}

void SupportScan::flush_group() {
    if (buffer_.empty() || sigmas_.empty()) {
        if (meter_) meter_->release(static_cast<std::int64_t>(buffer_.size()));
        buffer_.clear();
        return;
    }
    HullChain chain = upper_hull_small(buffer_);
    const std::size_t t = chain.size();
    // merge the chain's descending edge-slope list with the ascending
    // sigma list: walk sigmas from the top, advancing one chain pointer
    std::size_t i = 0;
    for (std::size_t k = sigmas_.size(); k-- > 0;) {
        const SlopeKey& s = sigmas_[k];
        while (i + 1 < t && slope(chain[i], chain[i + 1]) > s) ++i;
        const Point* cand = &chain[i];
        if (i + 1 < t && slope(chain[i], chain[i + 1]) == s)
            cand = better_support(&chain[i], &chain[i + 1], s.value());
        if (!best_[k]) {
            best_[k] = *cand;
            if (meter_) meter_->charge(1);
        } else {
            best_[k] = *better_support(&*best_[k], cand, s.value());
        }
    }
    if (meter_) meter_->release(static_cast<std::int64_t>(buffer_.size()));
    buffer_.clear();
}

void SupportScan::finish() {
    if (finished_) return;
    finished_ = true;
    flush_group();
    for (const auto& b : best_) {
        if (b) {
            supports_.push_back(*b);
            if (meter_) meter_->charge(1);
        }
    }
}

std::vector<SlopeKey> approx_quantile_slopes(const std::vector<Point>& stream, long r,
                                             const Rational& epsilon0, std::int64_t* q_count) {
    SlopeSketch sketch(r, epsilon0 / Rational(r + 1));
    for (const Point& p : stream) sketch.push(p);
    sketch.finish();
    if (q_count) *q_count = sketch.q_count();
    return sketch.sigmas();
}

std::vector<Point> suitable_extreme_points_stream(const std::vector<Point>& stream,
                                                  const std::vector<SlopeKey>& sigmas, long r) {
    SupportScan scan(sigmas, r);
    for (const Point& p : stream) scan.push(p);
    scan.finish();
    return scan.supports();
}

// ---------------------------------------------------------------------------
// Streaming engine: BFS over the recursion tree, O(1) tape scans per depth

namespace {

Point rotate_half(const Point& p) { return Point(Rational(-p.x), Rational(-p.y)); }

struct Node {
    enum class State { Active, Internal, Leaf };

    std::int64_t id = 0;
    int depth = 0;
    bool lower = false;
    std::optional<Point> a, b;  // anchors, working coordinates
    std::int64_t parent_input = 0;

    State state = State::Active;
    std::vector<SupportAnchor> child_anchors;
    std::vector<std::int64_t> child_ids;
    std::vector<Point> route_buf;

    std::unique_ptr<SlopeSketch> sketch;
    std::unique_ptr<SupportScan> scan;
    std::unique_ptr<SupportScan> guard;

    std::vector<SlopeKey> sigmas;
    std::vector<Point> supports;
    std::vector<Point> chain;
    std::int64_t routed_count = 0;
    std::optional<Point> pl, pr;

    std::vector<Point> captured;
};

class StreamEngine {
  public:
    StreamEngine(Tape& tape, const StreamRunConfig& cfg) : tape_(tape), cfg_(cfg) {
        if (cfg_.space_budget) meter_ = SpaceMeter(*cfg_.space_budget);
    }

    StreamRunResult run() {
        const auto t0 = std::chrono::steady_clock::now();
        const std::int64_t pass0 = tape_.pass_count();
        n_ = static_cast<std::int64_t>(tape_.record_count());
        if (n_ < 1) throw std::invalid_argument("run_streaming: empty tape");
        r_ = stream_branching(n_, cfg_.delta);
        eps_ = cfg_.epsilon0 / Rational(r_ + 1);

        make_node(0, false);
        make_node(0, true);
        levels_.push_back({0, 1});

        StreamRunResult res;
        for (int d = 0; d < static_cast<int>(levels_.size()); ++d) {
            if (!has_active(d)) continue;
            if (d > 0 && cfg_.space_fallback && active_count(d) * (r_ + 1) > n_) {
                run_fallback(res);
                break;
            }
            meter_.set_phase("depth " + std::to_string(d) + " slopes");
            std::int64_t scans = 1;
            run_pass(d, Phase::Slopes);
            resolve_slopes(d);
            if (has_active(d)) {
                meter_.set_phase("depth " + std::to_string(d) + " supports");
                run_pass(d, Phase::Supports);
                resolve_supports(d);
                ++scans;
            }
            res.passes_per_depth.push_back(scans);
            res.depths_processed = d + 1;
        }

        if (!res.fallback_used) res.hull = assemble();
        stats_.nodes = static_cast<std::int64_t>(nodes_.size());
        res.stats = stats_;
        res.tree_nodes = static_cast<std::int64_t>(nodes_.size());
        res.r = r_;
        res.metrics.algorithm = "stream";
        res.metrics.n = n_;
        res.metrics.h = static_cast<std::int64_t>(res.hull.size());
        res.metrics.passes = tape_.pass_count() - pass0;
        res.metrics.peak_space = meter_.peak();
        res.metrics.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                       std::chrono::steady_clock::now() - t0)
                                       .count();
        res.metrics.params["delta"] = cfg_.delta.get_str();
        res.metrics.params["r"] = std::to_string(r_);
        res.metrics.params["fallback"] = res.fallback_used ? "true" : "false";
        if (cfg_.capture_inputs) fill_reports(res);
        return res;
    }

  private:
    enum class Phase { Slopes, Supports };

    Node& make_node(int depth, bool lower) {
        auto node = std::make_unique<Node>();
        node->id = static_cast<std::int64_t>(nodes_.size());
        node->depth = depth;
        node->lower = lower;
        meter_.charge(1);  // descriptor
        nodes_.push_back(std::move(node));
        return *nodes_.back();
    }

    std::int64_t active_count(int d) {
        if (d >= static_cast<int>(levels_.size())) return 0;
        std::int64_t c = 0;
        for (std::int64_t id : levels_[d])
            if (nodes_[static_cast<std::size_t>(id)]->state == Node::State::Active) ++c;
        return c;
    }

    bool has_active(int d) {
        if (d >= static_cast<int>(levels_.size())) return false;
        for (std::int64_t id : levels_[d])
            if (nodes_[static_cast<std::size_t>(id)]->state == Node::State::Active) return true;
        return false;
    }

    void run_pass(int d, Phase phase) {
        phase_ = phase;
        for (std::int64_t id : levels_[static_cast<std::size_t>(d)]) {
            Node& node = *nodes_[static_cast<std::size_t>(id)];
            if (node.state != Node::State::Active) continue;
            if (phase == Phase::Slopes) {
                node.sketch = std::make_unique<SlopeSketch>(r_, eps_, &meter_);
                node.routed_count = 0;
            } else {
                node.scan = std::make_unique<SupportScan>(node.sigmas, r_, &meter_);
                const std::optional<Point>& ga = node.a ? node.a : node.pl;
                const std::optional<Point>& gb = node.b ? node.b : node.pr;
                if (ga && gb && ga->x != gb->x) {
                    node.guard = std::make_unique<SupportScan>(
                        std::vector<SlopeKey>{slope(*ga, *gb)}, r_, &meter_);
                }
            }
            // anchors are part of every subproblem's input stream
            if (node.a) consume(node, *node.a, false);
            if (node.b) consume(node, *node.b, false);
        }

        auto pass = tape_.begin_pass();
        while (auto rec = pass.next()) {
            if (rec->tag != TapeRecord::Tag::PointRec) continue;
            deliver(*nodes_[0], rec->point, d);
            deliver(*nodes_[1], rotate_half(rec->point), d);
        }
        for (int fd = 0; fd < d; ++fd) {
            for (std::int64_t id : levels_[static_cast<std::size_t>(fd)]) {
                Node& node = *nodes_[static_cast<std::size_t>(id)];
                if (node.state == Node::State::Internal && !node.route_buf.empty())
                    flush_route(node, d);
            }
        }
        for (std::int64_t id : levels_[static_cast<std::size_t>(d)]) {
            Node& node = *nodes_[static_cast<std::size_t>(id)];
            if (node.state != Node::State::Active) continue;
            if (phase == Phase::Slopes) {
                node.sketch->finish();
            } else {
                node.scan->finish();
                if (node.guard) node.guard->finish();
            }
        }
    }

    void deliver(Node& node, const Point& p, int d) {
        switch (node.state) {
            case Node::State::Active:
                consume(node, p, true);
                break;
            case Node::State::Internal:
                node.route_buf.push_back(p);
                meter_.charge(1);
                if (node.route_buf.size() == static_cast<std::size_t>(r_) + 1)
                    flush_route(node, d);
                break;
            case Node::State::Leaf:
                break;  // already solved; point is pruned
        }
    }

    void consume(Node& node, const Point& p, bool counted) {
        if (counted && phase_ == Phase::Slopes) {
            ++node.routed_count;
            if (cfg_.capture_inputs) node.captured.push_back(p);
        }
        if (phase_ == Phase::Slopes) {
            node.sketch->push(p);
            if (!node.pl || p.x < node.pl->x || (p.x == node.pl->x && p.y > node.pl->y))
                node.pl = p;
            if (!node.pr || p.x > node.pr->x || (p.x == node.pr->x && p.y > node.pr->y))
                node.pr = p;
        } else {
            node.scan->push(p);
            if (node.guard) node.guard->push(p);
        }
    }

    void flush_route(Node& node, int d) {
        std::vector<std::vector<Point>> kids =
            refine(node.route_buf, node.child_anchors, node.route_buf.size());
        meter_.release(static_cast<std::int64_t>(node.route_buf.size()));
        node.route_buf.clear();
        for (std::size_t w = 0; w < kids.size(); ++w) {
            Node& child = *nodes_[static_cast<std::size_t>(node.child_ids[w])];
            for (const Point& p : kids[w]) deliver(child, p, d);
        }
    }

    void resolve_slopes(int d) {
        for (std::int64_t id : levels_[static_cast<std::size_t>(d)]) {
            Node& node = *nodes_[static_cast<std::size_t>(id)];
            if (node.state != Node::State::Active) continue;
            if (node.parent_input > 0)
                stats_.note_child(static_cast<std::size_t>(node.routed_count),
                                  static_cast<std::size_t>(node.parent_input), r_,
                                  cfg_.epsilon0);
            SlopeSketch& sk = *node.sketch;
            if (sk.single_group()) {
                // the whole subproblem fit in one buffer: solve it exactly
                node.chain = sk.first_group().empty()
                                 ? std::vector<Point>{}
                                 : upper_hull_small(sk.first_group()).vertices;
                meter_.charge(static_cast<std::int64_t>(node.chain.size()));
                node.state = Node::State::Leaf;
                ++stats_.leaves;
            } else {
                node.sigmas = sk.sigmas();
                meter_.charge(static_cast<std::int64_t>(node.sigmas.size()));
            }
            stats_.max_depth = std::max(stats_.max_depth, d);
            node.sketch.reset();
        }
        stats_.nodes = static_cast<std::int64_t>(nodes_.size());
    }

    void resolve_supports(int d) {
        std::vector<std::int64_t> next;
        for (std::int64_t id : levels_[static_cast<std::size_t>(d)]) {
            Node& node = *nodes_[static_cast<std::size_t>(id)];
            if (node.state != Node::State::Active) continue;
            node.supports = node.scan->supports();
            meter_.charge(static_cast<std::int64_t>(node.supports.size()));
            std::optional<Point> guard_pt;
            if (node.guard && !node.guard->supports().empty())
                guard_pt = node.guard->supports().front();
            node.scan.reset();
            node.guard.reset();

            const Point a = node.a ? *node.a : *node.pl;
            const Point b = node.b ? *node.b : *node.pr;
            if (a == b) {
                node.chain = {a};
                node.state = Node::State::Leaf;
                ++stats_.leaves;
                continue;
            }

            if (node.supports.size() != node.sigmas.size()) node.supports.clear();

            std::vector<SupportAnchor> anchors;
            anchors.push_back({a, SlopeKey::pos_infinity()});
            for (std::size_t k = node.supports.size(); k-- > 0;) {
                const Point& s = node.supports[k];
                if (s == a || s == b) continue;
                if (s == anchors.back().point) continue;
                if (s.x <= anchors.back().point.x || s.x >= b.x) continue;
                anchors.push_back({s, node.sigmas[k]});
            }
            anchors.push_back({b, SlopeKey::neg_infinity()});

            if (anchors.size() == 2) {
                if (guard_pt && *guard_pt != a && *guard_pt != b) {
                    anchors.insert(anchors.begin() + 1, {*guard_pt, slope(a, b)});
                } else {
                    node.chain = {a, b};
                    node.state = Node::State::Leaf;
                    ++stats_.leaves;
                    continue;
                }
            }

            node.child_anchors = anchors;
            node.state = Node::State::Internal;
            for (std::size_t w = 0; w + 1 < anchors.size(); ++w) {
                Node& child = make_node(d + 1, node.lower);
                child.a = anchors[w].point;
                child.b = anchors[w + 1].point;
                child.parent_input = node.routed_count + (node.a ? 2 : 0);
                node.child_ids.push_back(child.id);
                next.push_back(child.id);
            }
        }
        if (!next.empty()) {
            if (static_cast<int>(levels_.size()) <= d + 1) levels_.emplace_back();
            auto& lvl = levels_[static_cast<std::size_t>(d) + 1];
            lvl.insert(lvl.end(), next.begin(), next.end());
        }
    }

    void run_fallback(StreamRunResult& res) {
        meter_.set_phase("ram fallback");
        std::vector<Point> pts;
        {
            auto pass = tape_.begin_pass();
            while (auto rec = pass.next()) {
                if (rec->tag == TapeRecord::Tag::PointRec) {
                    pts.push_back(rec->point);
                    meter_.charge(1);
                }
            }
        }
        res.hull = ram_convex_hull(pts, r_, &stats_);
        res.fallback_used = true;
        meter_.release(static_cast<std::int64_t>(pts.size()));
    }

    std::vector<Point> assemble() {
        std::set<Point> upper_set, lower_set;
        for (const auto& node : nodes_) {
            if (node->state != Node::State::Leaf) continue;
            for (const Point& v : node->chain) {
                if (node->lower) {
                    lower_set.insert(rotate_half(v));
                } else {
                    upper_set.insert(v);
                }
            }
        }
        HullChain up, low;
        up.vertices.assign(upper_set.begin(), upper_set.end());
        low.vertices.assign(lower_set.begin(), lower_set.end());
        if (up.empty() || low.empty()) return up.empty() ? low.vertices : up.vertices;
        return stitch_hull(up, low);
    }

    void fill_reports(StreamRunResult& res) {
        for (const auto& node : nodes_) {
            StreamNodeReport rep;
            rep.id = node->id;
            rep.depth = node->depth;
            rep.lower = node->lower;
            rep.left_anchor = node->a ? node->a : node->pl;
            rep.right_anchor = node->b ? node->b : node->pr;
            rep.sigmas = node->sigmas;
            rep.supports = node->supports;
            rep.input_size = node->routed_count;
            rep.leaf = node->state == Node::State::Leaf;
            rep.routed = node->captured;
            res.nodes.push_back(std::move(rep));
        }
    }

    Tape& tape_;
    StreamRunConfig cfg_;
    SpaceMeter meter_;
    RecursionStats stats_;
    std::int64_t n_ = 0;
    long r_ = 1;
    Rational eps_;
    Phase phase_ = Phase::Slopes;
    std::vector<std::unique_ptr<Node>> nodes_;
    std::vector<std::vector<std::int64_t>> levels_;
};

}  // namespace

StreamRunResult run_streaming(Tape& tape, const StreamRunConfig& config) {
    if (sgn(config.delta) <= 0 || config.delta >= 1)
        throw std::invalid_argument("run_streaming: delta must be in (0,1)");
    StreamEngine engine(tape, config);
    return engine.run();
}

}  // namespace hullstream
