#include "wildkey/json_io.hpp"

#include "wildkey/errors.hpp"
#include "wildkey/text.hpp"

namespace wildkey {

namespace {

template <typename T>
void put_optional(nlohmann::json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

template <typename T>
void get_optional(const nlohmann::json& j, const char* key, std::optional<T>& v) {
    if (j.contains(key)) {
        v = j.at(key).get<T>();
    } else {
        v.reset();
    }
}

MotionKind motion_kind_from_string(const std::string& s) {
    if (s == "down") return MotionKind::down;
    if (s == "move") return MotionKind::move;
    if (s == "up") return MotionKind::up;
    throw ConfigError("bad motion_kind: " + s);
}

FieldKind field_kind_from_string(const std::string& s) {
    if (s == "normal") return FieldKind::normal;
    if (s == "password") return FieldKind::password;
    if (s == "numeric") return FieldKind::numeric;
    throw ConfigError("bad field_kind: " + s);
}

KeyKind key_kind_from_string(const std::string& s) {
    if (s == "character") return KeyKind::character;
    if (s == "backspace") return KeyKind::backspace;
    if (s == "enter") return KeyKind::enter;
    if (s == "space") return KeyKind::space;
    if (s == "shift") return KeyKind::shift;
    if (s == "suggestion_select") return KeyKind::suggestion_select;
    if (s == "autocorrect_apply") return KeyKind::autocorrect_apply;
    throw ConfigError("bad key kind: " + s);
}

DiscardReason discard_reason_from_string(const std::string& s) {
    if (s == "cursor_into_preexisting_text") return DiscardReason::cursor_into_preexisting_text;
    if (s == "password_field") return DiscardReason::password_field;
    if (s == "numeric_only") return DiscardReason::numeric_only;
    if (s == "incognito") return DiscardReason::incognito;
    throw ConfigError("bad discard reason: " + s);
}

CollectionMode mode_from_string(const std::string& s) {
    if (s == "implicit") return CollectionMode::implicit;
    if (s == "transcription") return CollectionMode::transcription;
    if (s == "composition") return CollectionMode::composition;
    if (s == "demo") return CollectionMode::demo;
    throw ConfigError("bad collection mode: " + s);
}

}  // namespace

void to_json(nlohmann::json& j, const DeviceInfo& v) {
    j = {{"os_version", v.os_version},
         {"brand", v.brand},
         {"model", v.model},
         {"screen_width_px", v.screen_width_px},
         {"screen_height_px", v.screen_height_px},
         {"density_px_per_cm", v.density_px_per_cm}};
}

void from_json(const nlohmann::json& j, DeviceInfo& v) {
    j.at("os_version").get_to(v.os_version);
    j.at("brand").get_to(v.brand);
    j.at("model").get_to(v.model);
    j.at("screen_width_px").get_to(v.screen_width_px);
    j.at("screen_height_px").get_to(v.screen_height_px);
    j.at("density_px_per_cm").get_to(v.density_px_per_cm);
}

void to_json(nlohmann::json& j, const TouchSample& v) {
    j = {{"x_px", v.x_px},
         {"y_px", v.y_px},
         {"touch_major_px", v.touch_major_px},
         {"touch_minor_px", v.touch_minor_px},
         {"motion_kind", to_string(v.motion_kind)},
         {"timestamp_ms", v.timestamp_ms}};
}

void from_json(const nlohmann::json& j, TouchSample& v) {
    j.at("x_px").get_to(v.x_px);
    j.at("y_px").get_to(v.y_px);
    j.at("touch_major_px").get_to(v.touch_major_px);
    j.at("touch_minor_px").get_to(v.touch_minor_px);
    v.motion_kind = motion_kind_from_string(j.at("motion_kind").get<std::string>());
    j.at("timestamp_ms").get_to(v.timestamp_ms);
}

void to_json(nlohmann::json& j, const Key& v) {
    j = {{"kind", to_string(v.kind)}};
    if (v.kind == KeyKind::character) j["codepoint"] = static_cast<std::uint32_t>(v.codepoint);
    if (v.kind == KeyKind::suggestion_select) j["index"] = v.suggestion_index;
}

void from_json(const nlohmann::json& j, Key& v) {
    v = Key{};
    v.kind = key_kind_from_string(j.at("kind").get<std::string>());
    if (v.kind == KeyKind::character) {
        v.codepoint = static_cast<char32_t>(j.at("codepoint").get<std::uint32_t>());
    }
    if (v.kind == KeyKind::suggestion_select) {
        v.suggestion_index = j.at("index").get<int>();
    }
}

void to_json(nlohmann::json& j, const KeyEvent& v) {
    j = {{"key", v.key},
         {"down_ts_ms", v.down_ts_ms},
         {"up_ts_ms", v.up_ts_ms},
         {"touch_trace", v.touch_trace},
         {"key_centroid_x_px", v.key_centroid_x_px},
         {"key_centroid_y_px", v.key_centroid_y_px},
         {"key_width_px", v.key_width_px},
         {"key_height_px", v.key_height_px}};
}

void from_json(const nlohmann::json& j, KeyEvent& v) {
    j.at("key").get_to(v.key);
    j.at("down_ts_ms").get_to(v.down_ts_ms);
    j.at("up_ts_ms").get_to(v.up_ts_ms);
    j.at("touch_trace").get_to(v.touch_trace);
    j.at("key_centroid_x_px").get_to(v.key_centroid_x_px);
    j.at("key_centroid_y_px").get_to(v.key_centroid_y_px);
    j.at("key_width_px").get_to(v.key_width_px);
    j.at("key_height_px").get_to(v.key_height_px);
}

void to_json(nlohmann::json& j, const CursorChange& v) {
    j = {{"timestamp_ms", v.timestamp_ms},
         {"new_position", v.new_position},
         {"selection_end", v.selection_end}};
}

void from_json(const nlohmann::json& j, CursorChange& v) {
    j.at("timestamp_ms").get_to(v.timestamp_ms);
    j.at("new_position").get_to(v.new_position);
    j.at("selection_end").get_to(v.selection_end);
}

void to_json(nlohmann::json& j, const SuggestionSnapshot& v) {
    j = {{"timestamp_ms", v.timestamp_ms}, {"ranked_words", v.ranked_words}};
}

void from_json(const nlohmann::json& j, SuggestionSnapshot& v) {
    j.at("timestamp_ms").get_to(v.timestamp_ms);
    j.at("ranked_words").get_to(v.ranked_words);
}

void to_json(nlohmann::json& j, const FieldContext& v) {
    j = {{"field_kind", to_string(v.field_kind)},
         {"preexisting_text_len", v.preexisting_text_len}};
}

void from_json(const nlohmann::json& j, FieldContext& v) {
    v.field_kind = field_kind_from_string(j.at("field_kind").get<std::string>());
    j.at("preexisting_text_len").get_to(v.preexisting_text_len);
}

void to_json(nlohmann::json& j, const LanguageEvent& v) {
    j = {{"timestamp_ms", v.timestamp_ms}, {"language", v.language}};
}

void from_json(const nlohmann::json& j, LanguageEvent& v) {
    j.at("timestamp_ms").get_to(v.timestamp_ms);
    j.at("language").get_to(v.language);
}

void to_json(nlohmann::json& j, const RawSession& v) {
    j = {{"session_id", v.session_id},
         {"user_token", v.user_token},
         {"device", v.device},
         {"field", v.field},
         {"keyboard_language_events", v.keyboard_language_events},
         {"key_events", v.key_events},
         {"cursor_changes", v.cursor_changes},
         {"suggestions", v.suggestions},
         {"keyboard_shown_ts_ms", v.keyboard_shown_ts_ms},
         {"keyboard_hidden_ts_ms", v.keyboard_hidden_ts_ms},
         {"incognito", v.incognito}};
}

void from_json(const nlohmann::json& j, RawSession& v) {
    j.at("session_id").get_to(v.session_id);
    j.at("user_token").get_to(v.user_token);
    j.at("device").get_to(v.device);
    j.at("field").get_to(v.field);
    j.at("keyboard_language_events").get_to(v.keyboard_language_events);
    j.at("key_events").get_to(v.key_events);
    j.at("cursor_changes").get_to(v.cursor_changes);
    j.at("suggestions").get_to(v.suggestions);
    j.at("keyboard_shown_ts_ms").get_to(v.keyboard_shown_ts_ms);
    j.at("keyboard_hidden_ts_ms").get_to(v.keyboard_hidden_ts_ms);
    j.at("incognito").get_to(v.incognito);
}

void to_json(nlohmann::json& j, const DiscardRecord& v) {
    j = {{"trial_id", v.trial_id},
         {"reason", to_string(v.reason)},
         {"chars_written", v.chars_written}};
}

void from_json(const nlohmann::json& j, DiscardRecord& v) {
    j.at("trial_id").get_to(v.trial_id);
    v.reason = discard_reason_from_string(j.at("reason").get<std::string>());
    j.at("chars_written").get_to(v.chars_written);
}

void to_json(nlohmann::json& j, const TouchExtent& v) {
    j = {{"major_cm", v.major_cm}, {"minor_cm", v.minor_cm}};
}

void from_json(const nlohmann::json& j, TouchExtent& v) {
    j.at("major_cm").get_to(v.major_cm);
    j.at("minor_cm").get_to(v.minor_cm);
}

void to_json(nlohmann::json& j, const TouchOffset& v) {
    j = {{"dx_cm", v.dx_cm}, {"dy_cm", v.dy_cm}};
}

void from_json(const nlohmann::json& j, TouchOffset& v) {
    j.at("dx_cm").get_to(v.dx_cm);
    j.at("dy_cm").get_to(v.dy_cm);
}

void to_json(nlohmann::json& j, const MotionRecord& v) {
    j = {{"motion_kind", to_string(v.kind)},
         {"x_px", v.x_px},
         {"y_px", v.y_px},
         {"timestamp_ms", v.timestamp_ms}};
}

void from_json(const nlohmann::json& j, MotionRecord& v) {
    v.kind = motion_kind_from_string(j.at("motion_kind").get<std::string>());
    j.at("x_px").get_to(v.x_px);
    j.at("y_px").get_to(v.y_px);
    j.at("timestamp_ms").get_to(v.timestamp_ms);
}

void to_json(nlohmann::json& j, const ErrorRateDetail& v) {
    nlohmann::json per = nlohmann::json::object();
    for (const auto& [cp, rate] : v.per_letter) per[encode_utf8(cp)] = rate;
    j = {{"aggregate", v.aggregate}, {"per_letter", per}};
}

void from_json(const nlohmann::json& j, ErrorRateDetail& v) {
    v = ErrorRateDetail{};
    j.at("aggregate").get_to(v.aggregate);
    for (const auto& [key, rate] : j.at("per_letter").items()) {
        const std::vector<char32_t> cps = decode_utf8(key);
        if (cps.size() != 1) throw ConfigError("per_letter key must be one character: " + key);
        v.per_letter[cps[0]] = rate.get<double>();
    }
}

void to_json(nlohmann::json& j, const SessionMetrics& v) {
    j = nlohmann::json::object();
    j["mode"] = to_string(v.mode);
    j["trial_start_ts_ms"] = v.trial_start_ts_ms;
    j["trial_end_ts_ms"] = v.trial_end_ts_ms;
    put_optional(j, "wpm", v.wpm);
    put_optional(j, "words_per_second", v.words_per_second);
    put_optional(j, "seconds_per_word", v.seconds_per_word);
    put_optional(j, "corrected_er", v.corrected_er);
    put_optional(j, "uncorrected_er", v.uncorrected_er);
    put_optional(j, "total_er", v.total_er);
    put_optional(j, "insertion_er", v.insertion_er);
    put_optional(j, "omission_er", v.omission_er);
    put_optional(j, "substitution_er", v.substitution_er);
    j["error_correction_attempts"] = v.error_correction_attempts;
    j["flight_times_ms"] = v.flight_times_ms;
    j["hold_times_ms"] = v.hold_times_ms;
    j["touch_major_minor"] = v.touch_major_minor;
    j["touch_offsets_cm"] = v.touch_offsets_cm;
    put_optional(j, "key_selected", v.key_selected);
    put_optional(j, "motion_info", v.motion_info);
    j["input_timestamps_ms"] = v.input_timestamps_ms;
    j["action_count"] = v.action_count;
    j["correction_action_count"] = v.correction_action_count;
    j["entry_action_count"] = v.entry_action_count;
    j["autocorrect_count"] = v.autocorrect_count;
    j["changed_char_count"] = v.changed_char_count;
    j["suggestion_count"] = v.suggestion_count;
    j["written_characters"] = v.written_characters;
    j["written_numbers"] = v.written_numbers;
    j["written_specials"] = v.written_specials;
    put_optional(j, "raw_text", v.raw_text);
    put_optional(j, "intent_text", v.intent_text);
    j["n_dictionary_hits"] = v.n_dictionary_hits;
    j["n_spellcheck_predictions"] = v.n_spellcheck_predictions;
    put_optional(j, "intent_validation", v.intent_validation);
    j["keyboard_language"] = v.keyboard_language;
}

void from_json(const nlohmann::json& j, SessionMetrics& v) {
    v = SessionMetrics{};
    v.mode = mode_from_string(j.at("mode").get<std::string>());
    j.at("trial_start_ts_ms").get_to(v.trial_start_ts_ms);
    j.at("trial_end_ts_ms").get_to(v.trial_end_ts_ms);
    get_optional(j, "wpm", v.wpm);
    get_optional(j, "words_per_second", v.words_per_second);
    get_optional(j, "seconds_per_word", v.seconds_per_word);
    get_optional(j, "corrected_er", v.corrected_er);
    get_optional(j, "uncorrected_er", v.uncorrected_er);
    get_optional(j, "total_er", v.total_er);
    get_optional(j, "insertion_er", v.insertion_er);
    get_optional(j, "omission_er", v.omission_er);
    get_optional(j, "substitution_er", v.substitution_er);
    j.at("error_correction_attempts").get_to(v.error_correction_attempts);
    j.at("flight_times_ms").get_to(v.flight_times_ms);
    j.at("hold_times_ms").get_to(v.hold_times_ms);
    j.at("touch_major_minor").get_to(v.touch_major_minor);
    j.at("touch_offsets_cm").get_to(v.touch_offsets_cm);
    get_optional(j, "key_selected", v.key_selected);
    get_optional(j, "motion_info", v.motion_info);
    j.at("input_timestamps_ms").get_to(v.input_timestamps_ms);
    j.at("action_count").get_to(v.action_count);
    j.at("correction_action_count").get_to(v.correction_action_count);
    j.at("entry_action_count").get_to(v.entry_action_count);
    j.at("autocorrect_count").get_to(v.autocorrect_count);
    j.at("changed_char_count").get_to(v.changed_char_count);
    j.at("suggestion_count").get_to(v.suggestion_count);
    j.at("written_characters").get_to(v.written_characters);
    j.at("written_numbers").get_to(v.written_numbers);
    j.at("written_specials").get_to(v.written_specials);
    get_optional(j, "raw_text", v.raw_text);
    get_optional(j, "intent_text", v.intent_text);
    j.at("n_dictionary_hits").get_to(v.n_dictionary_hits);
    j.at("n_spellcheck_predictions").get_to(v.n_spellcheck_predictions);
    get_optional(j, "intent_validation", v.intent_validation);
    j.at("keyboard_language").get_to(v.keyboard_language);
}

std::string serialize_session_line(const RawSession& session) {
    return nlohmann::json(session).dump();
}

RawSession parse_session_line(const std::string& line) {
    return nlohmann::json::parse(line).get<RawSession>();
}

}  // namespace wildkey
