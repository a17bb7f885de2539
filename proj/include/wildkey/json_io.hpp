#pragma once
#include <json.hpp>

#include "wildkey/events.hpp"
#include "wildkey/metrics.hpp"
#include "wildkey/privacy.hpp"
#include "wildkey/segmenter.hpp"

namespace wildkey {

// JSON bindings for the event-log JSONL format (field names are the type
// fields in snake_case) and for stored metric records. Study-plan and config
// bindings live with their modules.

void to_json(nlohmann::json& j, const DeviceInfo& v);
void from_json(const nlohmann::json& j, DeviceInfo& v);

void to_json(nlohmann::json& j, const TouchSample& v);
void from_json(const nlohmann::json& j, TouchSample& v);

void to_json(nlohmann::json& j, const Key& v);
void from_json(const nlohmann::json& j, Key& v);

void to_json(nlohmann::json& j, const KeyEvent& v);
void from_json(const nlohmann::json& j, KeyEvent& v);

void to_json(nlohmann::json& j, const CursorChange& v);
void from_json(const nlohmann::json& j, CursorChange& v);

void to_json(nlohmann::json& j, const SuggestionSnapshot& v);
void from_json(const nlohmann::json& j, SuggestionSnapshot& v);

void to_json(nlohmann::json& j, const FieldContext& v);
void from_json(const nlohmann::json& j, FieldContext& v);

void to_json(nlohmann::json& j, const LanguageEvent& v);
void from_json(const nlohmann::json& j, LanguageEvent& v);

void to_json(nlohmann::json& j, const RawSession& v);
void from_json(const nlohmann::json& j, RawSession& v);

void to_json(nlohmann::json& j, const DiscardRecord& v);
void from_json(const nlohmann::json& j, DiscardRecord& v);

void to_json(nlohmann::json& j, const TouchExtent& v);
void from_json(const nlohmann::json& j, TouchExtent& v);

void to_json(nlohmann::json& j, const TouchOffset& v);
void from_json(const nlohmann::json& j, TouchOffset& v);

void to_json(nlohmann::json& j, const MotionRecord& v);
void from_json(const nlohmann::json& j, MotionRecord& v);

void to_json(nlohmann::json& j, const ErrorRateDetail& v);
void from_json(const nlohmann::json& j, ErrorRateDetail& v);

void to_json(nlohmann::json& j, const SessionMetrics& v);
void from_json(const nlohmann::json& j, SessionMetrics& v);

std::string serialize_session_line(const RawSession& session);
RawSession parse_session_line(const std::string& line);  // throws nlohmann parse errors

}  // namespace wildkey
