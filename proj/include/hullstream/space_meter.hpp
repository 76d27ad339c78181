#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace hullstream {

// Thrown when a metered algorithm exceeds its space budget.
struct BudgetViolation : std::runtime_error {
    BudgetViolation(std::int64_t peak_units, std::string phase_name)
        : std::runtime_error("space budget exceeded in phase '" + phase_name +
                             "' (peak " + std::to_string(peak_units) + " units)"),
          peak(peak_units),
          phase(std::move(phase_name)) {}
    std::int64_t peak;
    std::string phase;
};

// Space accounting in point-equivalents: one unit per resident point,
// summary tuple, or subproblem descriptor. O(1) scalars are free.
class SpaceMeter {
  public:
    SpaceMeter() = default;
    explicit SpaceMeter(std::int64_t budget) : budget_(budget) {}

    void set_phase(std::string phase) { phase_ = std::move(phase); }
    const std::string& phase() const { return phase_; }

    void add(std::int64_t delta) {
        current_ += delta;
        peak_ = std::max(peak_, current_);
        if (budget_ && current_ > *budget_) throw BudgetViolation(peak_, phase_);
    }
    void charge(std::int64_t units) { add(units); }
    void release(std::int64_t units) { add(-units); }

    std::int64_t current() const { return current_; }
    std::int64_t peak() const { return peak_; }
    std::optional<std::int64_t> budget() const { return budget_; }

  private:
    std::int64_t current_ = 0;
    std::int64_t peak_ = 0;
    std::optional<std::int64_t> budget_;
    std::string phase_;
};

}  // namespace hullstream
