#include "wildkey/privacy.hpp"

#include <json.hpp>

#include "wildkey/text.hpp"

namespace wildkey {

namespace {

const std::set<std::string> kAllFields = {
    "mode", "trial_start_ts_ms", "trial_end_ts_ms",
    "wpm", "words_per_second", "seconds_per_word",
    "corrected_er", "uncorrected_er", "total_er",
    "insertion_er", "omission_er", "substitution_er",
    "error_correction_attempts",
    "flight_times_ms", "hold_times_ms", "touch_major_minor", "touch_offsets_cm",
    "key_selected", "motion_info", "input_timestamps_ms",
    "action_count", "correction_action_count", "entry_action_count",
    "autocorrect_count", "changed_char_count", "suggestion_count",
    "written_characters", "written_numbers", "written_specials",
    "raw_text", "intent_text", "n_dictionary_hits", "n_spellcheck_predictions",
    "intent_validation", "keyboard_language",
};

std::set<std::string> minus(std::set<std::string> fields,
                            const std::set<std::string>& removed) {
    for (const std::string& f : removed) fields.erase(f);
    return fields;
}

}  // namespace

FieldPolicy::FieldPolicy() : fields_(kAllFields) {
    // Reproduces the mode/metric availability table: implicit records carry
    // nothing with textual content or text-reconstruction potential; demo
    // drops the key/motion sequences and intent validation; composition has
    // no target phrase to validate against.
    allowed_[CollectionMode::implicit] =
        minus(kAllFields, {"insertion_er", "omission_er", "substitution_er", "key_selected",
                           "motion_info", "raw_text", "intent_text", "intent_validation"});
    allowed_[CollectionMode::transcription] = kAllFields;
    allowed_[CollectionMode::composition] = minus(kAllFields, {"intent_validation"});
    allowed_[CollectionMode::demo] =
        minus(kAllFields, {"key_selected", "motion_info", "intent_validation"});
}

const FieldPolicy& FieldPolicy::instance() {
    static const FieldPolicy policy;
    return policy;
}

bool FieldPolicy::allowed(CollectionMode mode, const std::string& field) const {
    return allowed_.at(mode).count(field) > 0;
}

const std::set<std::string>& FieldPolicy::allowed_fields(CollectionMode mode) const {
    return allowed_.at(mode);
}

std::string FieldPolicy::to_json_string() const {
    nlohmann::json j;
    j["policy_version"] = 1;
    for (const auto& [mode, fields] : allowed_) {
        nlohmann::json row;
        for (const std::string& f : fields_) row[f] = fields.count(f) > 0;
        j["modes"][to_string(mode)] = row;
    }
    return j.dump(2) + "\n";
}

RedactedMetrics redact(const SessionMetrics& m) {
    const FieldPolicy& policy = FieldPolicy::instance();
    SessionMetrics out = m;
    const auto gone = [&](const char* field) { return !policy.allowed(m.mode, field); };

    if (gone("wpm")) out.wpm.reset();
    if (gone("words_per_second")) out.words_per_second.reset();
    if (gone("seconds_per_word")) out.seconds_per_word.reset();
    if (gone("corrected_er")) out.corrected_er.reset();
    if (gone("uncorrected_er")) out.uncorrected_er.reset();
    if (gone("total_er")) out.total_er.reset();
    if (gone("insertion_er")) out.insertion_er.reset();
    if (gone("omission_er")) out.omission_er.reset();
    if (gone("substitution_er")) out.substitution_er.reset();
    if (gone("flight_times_ms")) out.flight_times_ms.clear();
    if (gone("hold_times_ms")) out.hold_times_ms.clear();
    if (gone("touch_major_minor")) out.touch_major_minor.clear();
    if (gone("touch_offsets_cm")) out.touch_offsets_cm.clear();
    if (gone("key_selected")) out.key_selected.reset();
    if (gone("motion_info")) out.motion_info.reset();
    if (gone("input_timestamps_ms")) out.input_timestamps_ms.clear();
    if (gone("raw_text")) out.raw_text.reset();
    if (gone("intent_text")) out.intent_text.reset();
    if (gone("intent_validation")) out.intent_validation.reset();
    if (gone("keyboard_language")) out.keyboard_language.clear();
    return RedactedMetrics(std::move(out));
}

namespace {

// Field names whose values are closed-vocabulary schema constants, not user
// data; they are masked together with the keys.
const std::set<std::string> kEnumFields = {"mode", "kind", "origin", "source", "motion_kind",
                                           "field_kind", "status", "reason", "provenance",
                                           "group_by", "record_kind"};

void collect_values(const nlohmann::json& j, std::string& haystack) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (kEnumFields.count(key) > 0) continue;
            collect_values(value, haystack);
        }
    } else if (j.is_array()) {
        for (const auto& value : j) collect_values(value, haystack);
    } else if (j.is_string()) {
        haystack += j.get<std::string>();
        haystack += '\n';
    } else if (j.is_number()) {
        haystack += j.dump();
        haystack += '\n';
    }
    // booleans and nulls render as schema words; skip them
}

}  // namespace

bool leak_check(const std::string& serialized_record, const std::string& typed_text) {
    std::string haystack;
    nlohmann::json j = nlohmann::json::parse(serialized_record, nullptr, false);
    if (j.is_discarded()) {
        haystack = serialized_record;  // not JSON: scan everything
    } else {
        collect_values(j, haystack);
    }

    // Any >= 3 char leak contains a 3-char leak, so scanning trigram windows
    // of the alphabetic runs is exact.
    const std::vector<char32_t> cps = decode_utf8(typed_text);
    std::vector<char32_t> run;
    auto scan_run = [&]() {
        for (std::size_t i = 0; i + 3 <= run.size(); ++i) {
            const std::string needle =
                encode_utf8(std::vector<char32_t>(run.begin() + static_cast<std::ptrdiff_t>(i),
                                                  run.begin() + static_cast<std::ptrdiff_t>(i) + 3));
            if (haystack.find(needle) != std::string::npos) return false;
        }
        return true;
    };
    for (char32_t cp : cps) {
        if (is_letter(cp)) {
            run.push_back(cp);
        } else {
            if (!scan_run()) return false;
            run.clear();
        }
    }
    return scan_run();
}

}  // namespace wildkey
