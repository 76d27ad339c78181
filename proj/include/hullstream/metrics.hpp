#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace hullstream {

// Measured outcome of one algorithm run.
struct RunMetrics {
    std::string algorithm;
    std::int64_t n = 0;
    std::int64_t h = 0;
    std::int64_t passes = 0;
    std::int64_t peak_space = 0;  // point-equivalents
    std::int64_t wall_time_ms = 0;
    std::map<std::string, std::string> params;
};

// versioned, schema-stable JSON object
std::string metrics_to_json(const RunMetrics& m);

}  // namespace hullstream
