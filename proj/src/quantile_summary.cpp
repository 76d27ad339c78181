#include "hullstream/quantile_summary.hpp"

#include <algorithm>

namespace hullstream {

namespace {

std::int64_t rational_floor(const Rational& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q.get_si();
}

std::int64_t rational_ceil(const Rational& r) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q.get_si();
}

}  // namespace

QuantileSummary::QuantileSummary(Rational epsilon, SpaceMeter* meter)
    : eps_(std::move(epsilon)), meter_(meter) {
    if (sgn(eps_) <= 0 || eps_ >= 1)
        throw std::invalid_argument("QuantileSummary: epsilon must be in (0,1)");
    compress_period_ = std::max<std::int64_t>(1, rational_ceil(Rational(1) / (2 * eps_)));
}

QuantileSummary::~QuantileSummary() { reset(); }

QuantileSummary::QuantileSummary(QuantileSummary&& other) noexcept
    : eps_(std::move(other.eps_)),
      tuples_(std::move(other.tuples_)),
      n_(other.n_),
      inserts_since_compress_(other.inserts_since_compress_),
      compress_period_(other.compress_period_),
      meter_(other.meter_) {
    other.tuples_.clear();
    other.meter_ = nullptr;
}

QuantileSummary& QuantileSummary::operator=(QuantileSummary&& other) noexcept {
    if (this != &other) {
        reset();
        eps_ = std::move(other.eps_);
        tuples_ = std::move(other.tuples_);
        n_ = other.n_;
        inserts_since_compress_ = other.inserts_since_compress_;
        compress_period_ = other.compress_period_;
        meter_ = other.meter_;
        other.tuples_.clear();
        other.meter_ = nullptr;
    }
    return *this;
}

void QuantileSummary::reset() {
    if (meter_ && !tuples_.empty()) meter_->release(static_cast<std::int64_t>(tuples_.size()));
    tuples_.clear();
    n_ = 0;
    inserts_since_compress_ = 0;
}

std::int64_t QuantileSummary::capacity() const {
    return rational_floor(2 * eps_ * Rational(static_cast<long>(n_)));
}

void QuantileSummary::insert(const SlopeKey& value) {
    if (!value.is_finite())
        throw std::invalid_argument("QuantileSummary: only finite slopes are insertable");
    ++n_;
    auto it = std::upper_bound(tuples_.begin(), tuples_.end(), value,
                               [](const SlopeKey& v, const Tuple& t) { return v < t.value; });
    std::int64_t delta = 0;
    if (it != tuples_.begin() && it != tuples_.end()) {
        delta = std::max<std::int64_t>(0, capacity() - 1);
    }
    tuples_.insert(it, Tuple{value, 1, delta});
    if (meter_) meter_->charge(1);
    if (++inserts_since_compress_ >= compress_period_) {
        compress();
        inserts_since_compress_ = 0;
    }
}

void QuantileSummary::compress() {
    if (tuples_.size() < 3) return;
    const std::int64_t cap = capacity();
    std::size_t released = 0;
    // merge right-to-left; first and last tuples stay exact
    for (std::size_t i = tuples_.size() - 2; i >= 1; --i) {
        Tuple& cur = tuples_[i];
        Tuple& next = tuples_[i + 1];
        if (cur.g + next.g + next.delta <= cap) {
            next.g += cur.g;
            tuples_.erase(tuples_.begin() + static_cast<std::ptrdiff_t>(i));
            ++released;
        }
    }
    if (meter_ && released > 0) meter_->release(static_cast<std::int64_t>(released));
}

SlopeKey QuantileSummary::query(std::int64_t rank) const {
    if (n_ == 0) throw std::out_of_range("QuantileSummary: query on empty summary");
    if (rank < 1 || rank > n_)
        throw std::out_of_range("QuantileSummary: rank out of range");
    const Rational err = eps_ * Rational(static_cast<long>(n_));
    std::int64_t rmin = 0;
    for (const Tuple& t : tuples_) {
        rmin += t.g;
        const std::int64_t rmax = rmin + t.delta;
        if (Rational(static_cast<long>(rank - rmin)) <= err &&
            Rational(static_cast<long>(rmax - rank)) <= err) {
            return t.value;
        }
    }
    // maintenance invariant guarantees a hit; ends are exact fallbacks
    return rank <= n_ / 2 ? tuples_.front().value : tuples_.back().value;
}

}  // namespace hullstream
