#pragma once

#include <cstdint>
#include <vector>

#include "hullstream/geom.hpp"
#include "hullstream/space_meter.hpp"

namespace hullstream {

// Greenwald-Khanna epsilon-approximate quantile summary over finite
// SlopeKeys. A query for rank t returns a value whose true rank in the
// inserted multiset lies within [t - eps*n, t + eps*n]. While
// n < 1/(2*eps) no merging happens, so small summaries answer exactly.
class QuantileSummary {
  public:
    struct Tuple {
        SlopeKey value;
        std::int64_t g;
        std::int64_t delta;
    };

    explicit QuantileSummary(Rational epsilon, SpaceMeter* meter = nullptr);

    void insert(const SlopeKey& value);
    SlopeKey query(std::int64_t rank) const;  // 1-based

    std::int64_t count() const { return n_; }
    std::size_t tuple_count() const { return tuples_.size(); }
    const std::vector<Tuple>& tuples() const { return tuples_; }
    const Rational& epsilon() const { return eps_; }

    // releases all metered tuples; summary becomes empty
    void reset();

    ~QuantileSummary();
    QuantileSummary(QuantileSummary&&) noexcept;
    QuantileSummary& operator=(QuantileSummary&&) noexcept;
    QuantileSummary(const QuantileSummary&) = delete;
    QuantileSummary& operator=(const QuantileSummary&) = delete;

  private:
    std::int64_t capacity() const;  // floor(2*eps*n)
    void compress();

    Rational eps_;
    std::vector<Tuple> tuples_;
    std::int64_t n_ = 0;
    std::int64_t inserts_since_compress_ = 0;
    std::int64_t compress_period_;
    SpaceMeter* meter_;
};

}  // namespace hullstream
