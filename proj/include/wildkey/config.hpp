#pragma once
#include <cstdint>
#include <json.hpp>
#include <string>

#include "wildkey/metrics.hpp"

namespace wildkey {

// Tool configuration. File values are overridden by CLI flags; store_path
// falls back to the WILDKEY_STORE environment variable.
struct Config {
    std::int64_t segmentation_idle_timeout_ms = 10000;
    int intent_max_distance = 2;
    int intent_max_suggestions = 5;
    FlightEndpoints touch_flight_endpoints = FlightEndpoints::release_press;
    std::string dictionary_path;
    std::string store_path;
    std::string study_timezone = "UTC";

    void validate() const;  // throws ConfigError on out-of-range values

    bool operator==(const Config&) const = default;
};

void to_json(nlohmann::json& j, const Config& v);
void from_json(const nlohmann::json& j, Config& v);

Config load_config(const std::string& path);

}  // namespace wildkey
