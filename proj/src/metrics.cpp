#include "hullstream/metrics.hpp"

#include <json.hpp>

namespace hullstream {

std::string metrics_to_json(const RunMetrics& m) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["algorithm"] = m.algorithm;
    j["n"] = m.n;
    j["h"] = m.h;
    j["passes"] = m.passes;
    j["peak_space"] = m.peak_space;
    j["wall_time_ms"] = m.wall_time_ms;
    j["params"] = m.params;
    return j.dump(2);
}

}  // namespace hullstream
