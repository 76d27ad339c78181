#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "hullstream/geom.hpp"
#include "hullstream/metrics.hpp"
#include "hullstream/quantile_summary.hpp"
#include "hullstream/ram_hull.hpp"
#include "hullstream/space_meter.hpp"
#include "hullstream/tape.hpp"

namespace hullstream {

// One-pass slope sketch: buffers groups of r+1 points, inserts the
// group-hull edge slopes into a GK summary, and answers the r
// (r+1)-quantile slope queries at the end. Keeps the raw points while
// the stream still fits in a single group, so tiny inputs solve exactly.
class SlopeSketch {
  public:
    SlopeSketch(long r, Rational epsilon, SpaceMeter* meter = nullptr);
    ~SlopeSketch();

    void push(const Point& p);
    void finish();

    const std::vector<SlopeKey>& sigmas() const { return sigmas_; }
    std::int64_t q_count() const { return q_count_; }
    std::int64_t points_seen() const { return points_seen_; }
    bool single_group() const { return single_group_; }
    const std::vector<Point>& first_group() const { return first_group_; }

  private:
    void flush_group();

    long r_;
    SpaceMeter* meter_;
    QuantileSummary summary_;
    std::vector<Point> buffer_;
    std::vector<Point> first_group_;
    std::int64_t q_count_ = 0;
    std::int64_t points_seen_ = 0;
    bool single_group_ = true;
    bool finished_ = false;
    std::vector<SlopeKey> sigmas_;
};

// One-pass support scan: per group of r+1 points, computes the group
// hull, merges its (descending) edge-slope list with the given
// ascending slope list, and folds each group candidate into the running
// best support per slope.
class SupportScan {
  public:
    SupportScan(std::vector<SlopeKey> sigmas_ascending, long r, SpaceMeter* meter = nullptr);
    ~SupportScan();

    void push(const Point& p);
    void finish();

    const std::vector<Point>& supports() const { return supports_; }
    bool has_supports() const { return !best_.empty() && best_.front().has_value(); }

  private:
    void flush_group();

    std::vector<SlopeKey> sigmas_;
    long r_;
    SpaceMeter* meter_;
    std::vector<Point> buffer_;
    std::vector<std::optional<Point>> best_;
    std::vector<Point> supports_;
    bool finished_ = false;
};

// Algorithm-level entry points; the streaming engine uses the same
// classes per live subproblem.
std::vector<SlopeKey> approx_quantile_slopes(const std::vector<Point>& stream, long r,
                                             const Rational& epsilon0,
                                             std::int64_t* q_count = nullptr);
std::vector<Point> suitable_extreme_points_stream(const std::vector<Point>& stream,
                                                  const std::vector<SlopeKey>& sigmas, long r);

struct StreamRunConfig {
    Rational delta;                       // r = ceil(n^delta)
    Rational epsilon0 = Rational(1, 2);   // GK error constant; eps = epsilon0/(r+1)
    bool space_fallback = true;
    std::optional<std::int64_t> space_budget;
    bool capture_inputs = false;          // record per-node routed inputs (tests)
};

struct StreamNodeReport {
    std::int64_t id = 0;
    int depth = 0;
    bool lower = false;
    std::optional<Point> left_anchor;
    std::optional<Point> right_anchor;
    std::vector<SlopeKey> sigmas;
    std::vector<Point> supports;
    std::int64_t input_size = 0;  // routed points, anchors excluded
    bool leaf = false;
    std::vector<Point> routed;  // only when capture_inputs
};

struct StreamRunResult {
    std::vector<Point> hull;  // clockwise from the leftmost point
    RunMetrics metrics;
    RecursionStats stats;
    std::int64_t tree_nodes = 0;
    int depths_processed = 0;
    std::vector<std::int64_t> passes_per_depth;
    bool fallback_used = false;
    long r = 0;
    std::vector<StreamNodeReport> nodes;  // only when capture_inputs
};

// Constant-pass streaming convex hull over a read-only point tape. The
// tape must already be deduplicated; n is the tape's record count.
StreamRunResult run_streaming(Tape& tape, const StreamRunConfig& config);

long stream_branching(std::int64_t n, const Rational& delta);  // r = ceil(n^delta)

}  // namespace hullstream
