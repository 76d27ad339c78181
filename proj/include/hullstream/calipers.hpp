#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "hullstream/geom.hpp"

namespace hullstream {

// A hull output stream that can be re-run from scratch. chunk(offset,
// count) re-runs the producer and returns hull vertices [offset,
// min(offset+count, h)) in clockwise order from the leftmost point.
class ReplayableHull {
  public:
    explicit ReplayableHull(std::function<std::vector<Point>()> producer)
        : producer_(std::move(producer)) {}

    std::vector<Point> chunk(std::size_t offset, std::size_t count);
    std::size_t replays() const { return replays_; }

  private:
    std::function<std::vector<Point>()> producer_;
    std::size_t replays_ = 0;
};

ReplayableHull make_hull_stream(std::vector<Point> points,
                                std::function<std::vector<Point>(const std::vector<Point>&)> algo);

// Forward-only cyclic cursor over a hull stream, buffering a window of
// up to ceil(s/2) consecutive extreme points; peek(0)/peek(1) give the
// current vertex and its clockwise successor.
class CaliperCursor {
  public:
    CaliperCursor(ReplayableHull& stream, std::size_t hull_size, std::size_t start,
                  std::size_t window_cap);

    const Point& peek(std::size_t ahead);  // ahead in {0, 1}
    void advance() { ++consumed_; }

    std::size_t consumed() const { return consumed_; }
    std::size_t refills() const { return refills_; }
    std::size_t position() const { return (start_ + consumed_) % h_; }

  private:
    void load(std::size_t abs);

    ReplayableHull& stream_;
    std::size_t h_;
    std::size_t start_;
    std::size_t cap_;
    std::size_t consumed_ = 0;
    std::size_t refills_ = 0;
    std::vector<Point> window_;
    std::size_t wbase_ = 0;  // absolute offset of window_[0]
    Point prev_;             // vertex just before the window
    bool has_prev_ = false;
};

struct DiameterResult {
    Rational squared;
    Point a, b;
    std::size_t hull_size = 0;
    std::array<std::size_t, 2> refills{0, 0};
};

// Exact squared diameter by antipodal-pair rotation; one cursor walks
// the edges from the leftmost point, the other tracks the opposite
// support starting at the rightmost point.
DiameterResult diameter(ReplayableHull& edge_stream, ReplayableHull& support_stream,
                        std::int64_t s);

struct RectangleResult {
    Rational area;
    std::array<Point, 4> corners;
    std::size_t hull_size = 0;
    std::array<std::size_t, 4> refills{0, 0, 0, 0};
};

// Minimum-area enclosing rectangle; one side lies on a hull edge. Four
// cursors: the edge walker plus the far, forward, and backward supports.
RectangleResult min_enclosing_rectangle(std::array<ReplayableHull*, 4> streams, std::int64_t s);

}  // namespace hullstream
