#include "wildkey/config.hpp"

#include <fstream>

#include "wildkey/errors.hpp"

namespace wildkey {

void Config::validate() const {
    if (segmentation_idle_timeout_ms <= 0) {
        throw ConfigError("segmentation.idle_timeout_ms must be > 0");
    }
    if (intent_max_distance < 0) throw ConfigError("intent.max_distance must be >= 0");
    if (intent_max_suggestions <= 0) throw ConfigError("intent.max_suggestions must be > 0");
}

void to_json(nlohmann::json& j, const Config& v) {
    j = {{"segmentation", {{"idle_timeout_ms", v.segmentation_idle_timeout_ms}}},
         {"intent",
          {{"max_distance", v.intent_max_distance},
           {"max_suggestions", v.intent_max_suggestions}}},
         {"touch", {{"flight_endpoints", to_string(v.touch_flight_endpoints)}}},
         {"dictionary", v.dictionary_path},
         {"store", v.store_path},
         {"study", {{"timezone", v.study_timezone}}}};
}

void from_json(const nlohmann::json& j, Config& v) {
    v = Config{};
    if (j.contains("segmentation") && j.at("segmentation").contains("idle_timeout_ms")) {
        j.at("segmentation").at("idle_timeout_ms").get_to(v.segmentation_idle_timeout_ms);
    }
    if (j.contains("intent")) {
        const auto& intent = j.at("intent");
        if (intent.contains("max_distance")) intent.at("max_distance").get_to(v.intent_max_distance);
        if (intent.contains("max_suggestions")) {
            intent.at("max_suggestions").get_to(v.intent_max_suggestions);
        }
    }
    if (j.contains("touch") && j.at("touch").contains("flight_endpoints")) {
        v.touch_flight_endpoints =
            flight_endpoints_from_string(j.at("touch").at("flight_endpoints").get<std::string>());
    }
    if (j.contains("dictionary")) j.at("dictionary").get_to(v.dictionary_path);
    if (j.contains("store")) j.at("store").get_to(v.store_path);
    if (j.contains("study") && j.at("study").contains("timezone")) {
        j.at("study").at("timezone").get_to(v.study_timezone);
    }
    v.validate();
}

Config load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config " + path + ": " + e.what());
    }
    return j.get<Config>();
}

}  // namespace wildkey
