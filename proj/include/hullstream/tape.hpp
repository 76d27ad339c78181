#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hullstream/geom.hpp"

namespace hullstream {

struct TapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One node of the recursion tree: anchors plus the (ascending) slope
// window that produced it. The trailing fields carry W-stream engine
// state; plain descriptors leave them at their defaults.
struct SubproblemDesc {
    std::int64_t id = 0;
    int depth = 0;
    Point left_anchor;
    Point right_anchor;
    SlopeKey slope_lo = SlopeKey::neg_infinity();
    SlopeKey slope_hi = SlopeKey::pos_infinity();

    int side = 0;   // 0: upper chain, 1: lower chain (rotated coordinates)
    int stage = 0;  // engine-specific work stage
    std::optional<SlopeKey> sigma;  // pending split slope
    std::optional<Point> split;     // pending split point
    std::int64_t child_left = -1;   // ids points get routed to
    std::int64_t child_right = -1;
};

struct TapeRecord {
    enum class Tag { PointRec, ParamRec, HullRec };

    Tag tag = Tag::PointRec;
    std::int64_t subproblem_id = 0;
    Point point;                          // PointRec / HullRec payload
    std::optional<SubproblemDesc> param;  // ParamRec payload

    static TapeRecord make_point(std::int64_t id, Point p) {
        TapeRecord r;
        r.tag = Tag::PointRec;
        r.subproblem_id = id;
        r.point = std::move(p);
        return r;
    }
    static TapeRecord make_param(SubproblemDesc d) {
        TapeRecord r;
        r.tag = Tag::ParamRec;
        r.subproblem_id = d.id;
        r.param = std::move(d);
        return r;
    }
    static TapeRecord make_hull(std::int64_t id, Point p) {
        TapeRecord r;
        r.tag = Tag::HullRec;
        r.subproblem_id = id;
        r.point = std::move(p);
        return r;
    }

    std::string serialize() const;
    static TapeRecord parse(const std::string& line);
};

// Sequential tape with pass accounting. In read-only mode the record
// sequence never changes. In writable mode, the sequence emitted during
// pass i is the sequence read by pass i+1. A pass handle must be driven
// to exhaustion; abandoning one mid-scan poisons the tape.
class Tape {
  public:
    enum class Mode { ReadOnly, Writable };

    static Tape in_memory(Mode mode, std::vector<TapeRecord> records = {});
    // records persisted one per line at `path`; pass semantics identical
    static Tape file_backed(Mode mode, std::string path, std::vector<TapeRecord> records = {});
    static Tape load_file(Mode mode, const std::string& path);

    class Pass {
      public:
        std::optional<TapeRecord> next();
        void emit(TapeRecord record);
        bool exhausted() const { return exhausted_; }

        ~Pass();
        Pass(Pass&&) noexcept;
        Pass& operator=(Pass&&) = delete;
        Pass(const Pass&) = delete;
        Pass& operator=(const Pass&) = delete;

      private:
        friend class Tape;
        explicit Pass(Tape* tape);
        void complete();

        Tape* tape_;
        std::size_t cursor_ = 0;
        std::unique_ptr<std::istream> file_in_;
        std::unique_ptr<std::ostream> file_out_;
        std::vector<TapeRecord> pending_;
        std::size_t pending_count_ = 0;
        bool exhausted_ = false;
    };

    Pass begin_pass();

    Mode mode() const { return mode_; }
    std::int64_t pass_count() const { return pass_count_; }
    std::size_t record_count() const { return record_count_; }
    bool poisoned() const { return poisoned_; }
    bool is_file_backed() const { return file_backed_; }
    const std::string& path() const { return path_; }

    // snapshot of the current sequence (drives no pass)
    std::vector<TapeRecord> snapshot() const;

    void save(const std::string& path) const;

    Tape(Tape&&) = default;
    Tape& operator=(Tape&&) = default;

  private:
    Tape() = default;

    Mode mode_ = Mode::ReadOnly;
    bool file_backed_ = false;
    std::string path_;
    std::vector<TapeRecord> records_;
    std::size_t record_count_ = 0;
    std::int64_t pass_count_ = 0;
    bool pass_active_ = false;
    bool poisoned_ = false;
};

// Write-only sink for extreme points; the producing algorithm never
// reads it back. Collects by default, or forwards to an attached
// downstream consumer.
class ResultStream {
  public:
    void attach(std::function<void(const Point&)> consumer) { consumer_ = std::move(consumer); }
    void emit(const Point& p) {
        if (consumer_) {
            consumer_(p);
        } else {
            points_.push_back(p);
        }
    }
    const std::vector<Point>& points() const { return points_; }

  private:
    std::function<void(const Point&)> consumer_;
    std::vector<Point> points_;
};

// convenience: a read-only or writable point tape, one record per point
Tape make_point_tape(Tape::Mode mode, const std::vector<Point>& points,
                     std::int64_t subproblem_id = 0);

}  // namespace hullstream
