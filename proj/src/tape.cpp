#include "hullstream/tape.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace hullstream {

namespace {

std::string rat_str(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rat(const std::string& tok) {
    try {
        Rational r(tok);
        r.canonicalize();
        return r;
    } catch (const std::exception&) {
        throw TapeError("tape record: bad rational '" + tok + "'");
    }
}

std::string slope_str(const SlopeKey& s) {
    switch (s.kind()) {
        case SlopeKey::Kind::NegInfinity: return "-inf";
        case SlopeKey::Kind::PosInfinity: return "inf";
        default: return rat_str(s.value());
    }
}

SlopeKey parse_slope(const std::string& tok) {
    if (tok == "-inf") return SlopeKey::neg_infinity();
    if (tok == "inf") return SlopeKey::pos_infinity();
    return SlopeKey::finite(parse_rat(tok));
}

}  // namespace

std::string TapeRecord::serialize() const {
    std::ostringstream os;
    switch (tag) {
        case Tag::PointRec:
            os << "P " << subproblem_id << ' ' << rat_str(point.x) << ' ' << rat_str(point.y);
            break;
        case Tag::HullRec:
            os << "H " << subproblem_id << ' ' << rat_str(point.x) << ' ' << rat_str(point.y);
            break;
        case Tag::ParamRec: {
            const SubproblemDesc& d = *param;
            os << "S " << d.id << ' ' << d.depth << ' ' << rat_str(d.left_anchor.x) << ' '
               << rat_str(d.left_anchor.y) << ' ' << rat_str(d.right_anchor.x) << ' '
               << rat_str(d.right_anchor.y) << ' ' << slope_str(d.slope_lo) << ' '
               << slope_str(d.slope_hi) << ' ' << d.side << ' ' << d.stage << ' '
               << (d.sigma ? slope_str(*d.sigma) : std::string("-"));
            if (d.split) {
                os << ' ' << rat_str(d.split->x) << ' ' << rat_str(d.split->y);
            } else {
                os << " - -";
            }
            os << ' ' << d.child_left << ' ' << d.child_right;
            break;
        }
    }
    return os.str();
}

TapeRecord TapeRecord::parse(const std::string& line) {
    std::istringstream is(line);
    std::string tag;
    is >> tag;
    if (tag == "P" || tag == "H") {
        std::int64_t id;
        std::string xs, ys;
        if (!(is >> id >> xs >> ys)) throw TapeError("tape record: truncated line '" + line + "'");
        Point p(parse_rat(xs), parse_rat(ys));
        return tag == "P" ? make_point(id, std::move(p)) : make_hull(id, std::move(p));
    }
    if (tag == "S") {
        SubproblemDesc d;
        std::string ax, ay, bx, by, slo, shi;
        if (!(is >> d.id >> d.depth >> ax >> ay >> bx >> by >> slo >> shi))
            throw TapeError("tape record: truncated line '" + line + "'");
        d.left_anchor = Point(parse_rat(ax), parse_rat(ay));
        d.right_anchor = Point(parse_rat(bx), parse_rat(by));
        d.slope_lo = parse_slope(slo);
        d.slope_hi = parse_slope(shi);
        std::string sigma, sx, sy;
        if (is >> d.side >> d.stage >> sigma >> sx >> sy) {
            if (sigma != "-") d.sigma = parse_slope(sigma);
            if (sx != "-") d.split = Point(parse_rat(sx), parse_rat(sy));
            is >> d.child_left >> d.child_right;
        }
        return make_param(std::move(d));
    }
    throw TapeError("tape record: unknown tag in '" + line + "'");
}

Tape Tape::in_memory(Mode mode, std::vector<TapeRecord> records) {
    Tape t;
    t.mode_ = mode;
    t.records_ = std::move(records);
    t.record_count_ = t.records_.size();
    return t;
}

Tape Tape::file_backed(Mode mode, std::string path, std::vector<TapeRecord> records) {
    {
        std::ofstream out(path);
        if (!out) throw TapeError("cannot open tape file '" + path + "'");
        for (const TapeRecord& r : records) out << r.serialize() << '\n';
    }
    Tape t;
    t.mode_ = mode;
    t.file_backed_ = true;
    t.path_ = std::move(path);
    t.record_count_ = records.size();
    return t;
}

Tape Tape::load_file(Mode mode, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TapeError("cannot open tape file '" + path + "'");
    std::size_t count = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) ++count;
    }
    Tape t;
    t.mode_ = mode;
    t.file_backed_ = true;
    t.path_ = path;
    t.record_count_ = count;
    return t;
}

Tape::Pass Tape::begin_pass() {
    if (poisoned_) throw TapeError("tape poisoned by an abandoned pass");
    if (pass_active_) throw TapeError("a pass is already in progress");
    pass_active_ = true;
    return Pass(this);
}

Tape::Pass::Pass(Tape* tape) : tape_(tape) {
    if (tape_->file_backed_) {
        auto in = std::make_unique<std::ifstream>(tape_->path_);
        if (!*in) throw TapeError("cannot open tape file '" + tape_->path_ + "'");
        file_in_ = std::move(in);
        if (tape_->mode_ == Mode::Writable) {
            auto out = std::make_unique<std::ofstream>(tape_->path_ + ".pending");
            if (!*out) throw TapeError("cannot open tape file '" + tape_->path_ + ".pending'");
            file_out_ = std::move(out);
        }
    }
}

Tape::Pass::Pass(Pass&& other) noexcept
    : tape_(other.tape_),
      cursor_(other.cursor_),
      file_in_(std::move(other.file_in_)),
      file_out_(std::move(other.file_out_)),
      pending_(std::move(other.pending_)),
      pending_count_(other.pending_count_),
      exhausted_(other.exhausted_) {
    other.tape_ = nullptr;
}

Tape::Pass::~Pass() {
    if (!tape_) return;
    if (!exhausted_) {
        // abandoned mid-scan: pass count stays put, tape becomes unusable
        tape_->poisoned_ = true;
        tape_->pass_active_ = false;
        if (file_out_) {
            file_out_.reset();
            std::error_code ec;
            std::filesystem::remove(tape_->path_ + ".pending", ec);
        }
    }
}

std::optional<TapeRecord> Tape::Pass::next() {
    if (!tape_ || exhausted_) return std::nullopt;
    if (tape_->file_backed_) {
        std::string line;
        while (std::getline(*file_in_, line)) {
            if (line.empty()) continue;
            return TapeRecord::parse(line);
        }
        complete();
        return std::nullopt;
    }
    if (cursor_ < tape_->records_.size()) {
        // writable in-memory sequences are replaced wholesale on
        // completion, so the slot can be moved out
        if (tape_->mode_ == Mode::Writable) return std::move(tape_->records_[cursor_++]);
        return tape_->records_[cursor_++];
    }
    complete();
    return std::nullopt;
}

void Tape::Pass::emit(TapeRecord record) {
    if (!tape_) throw TapeError("emit on a moved-from pass");
    if (exhausted_) throw TapeError("emit after pass completion");
    if (tape_->mode_ != Mode::Writable) throw TapeError("emit on a read-only tape");
    if (tape_->file_backed_) {
        *file_out_ << record.serialize() << '\n';
        ++pending_count_;
    } else {
        pending_.push_back(std::move(record));
    }
}

void Tape::Pass::complete() {
    exhausted_ = true;
    tape_->pass_active_ = false;
    ++tape_->pass_count_;
    if (tape_->mode_ == Mode::Writable) {
        if (tape_->file_backed_) {
            file_in_.reset();
            file_out_.reset();
            std::filesystem::rename(tape_->path_ + ".pending", tape_->path_);
            tape_->record_count_ = pending_count_;
        } else {
            tape_->records_ = std::move(pending_);
            tape_->record_count_ = tape_->records_.size();
            pending_.clear();
        }
    }
}

std::vector<TapeRecord> Tape::snapshot() const {
    if (pass_active_) throw TapeError("snapshot during an active pass");
    if (!file_backed_) return records_;
    std::vector<TapeRecord> out;
    std::ifstream in(path_);
    if (!in) throw TapeError("cannot open tape file '" + path_ + "'");
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) out.push_back(TapeRecord::parse(line));
    }
    return out;
}

void Tape::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw TapeError("cannot open tape file '" + path + "'");
    for (const TapeRecord& r : snapshot()) out << r.serialize() << '\n';
}

Tape make_point_tape(Tape::Mode mode, const std::vector<Point>& points, std::int64_t id) {
    std::vector<TapeRecord> recs;
    recs.reserve(points.size());
    for (const Point& p : points) recs.push_back(TapeRecord::make_point(id, p));
    return Tape::in_memory(mode, std::move(recs));
}

}  // namespace hullstream
