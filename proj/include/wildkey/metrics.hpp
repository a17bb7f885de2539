#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wildkey/events.hpp"
#include "wildkey/intent.hpp"
#include "wildkey/segmenter.hpp"
#include "wildkey/stream.hpp"

namespace wildkey {

// ---- speed ----

struct SpeedMetrics {
    std::optional<double> wpm;
    std::optional<double> words_per_second;  // paper-literal "time per word" formula
    std::optional<double> seconds_per_word;

    bool operator==(const SpeedMetrics&) const = default;
};

// wpm = (transcribed_len / 5) * (60 / trial_seconds). All fields absent when
// trial_seconds <= 0; seconds_per_word additionally absent when word_count
// is 0.
SpeedMetrics speed(std::int64_t transcribed_len, std::int64_t word_count,
                   double trial_seconds);

// ---- character alignment (minimum string distance) ----

enum class EditKind { match, substitution, insertion, omission };

struct AlignOp {
    EditKind kind = EditKind::match;
    char32_t final_ch = 0;   // valid for match/substitution/insertion
    char32_t intent_ch = 0;  // valid for match/substitution/omission

    bool operator==(const AlignOp&) const = default;
};

struct Alignment {
    int distance = 0;
    std::vector<AlignOp> ops;

    bool operator==(const Alignment&) const = default;
};

// Optimal unit-cost alignment of the final text against the intent text.
// Insertions are extra typed characters, omissions are intended characters
// never produced. Tie-break is deterministic: substitution is preferred over
// an insert+omit pair, then omission over insertion during backtrace.
Alignment align(const std::string& final_text, const std::string& intent_text);

// ---- error classification ----

struct PerLetterCounts {
    std::int64_t insertions = 0;
    std::int64_t omissions = 0;
    std::int64_t substitutions = 0;
    std::int64_t intentions = 0;

    bool operator==(const PerLetterCounts&) const = default;
};

struct ErrorClassification {
    std::int64_t C = 0;    // correct characters in the final/intent alignment
    std::int64_t INF = 0;  // incorrect, not fixed
    std::int64_t IF = 0;   // incorrect, fixed (erroneous erased characters)
    std::int64_t F = 0;    // correction actions
    std::map<char32_t, PerLetterCounts> per_letter;
    std::int64_t correction_attempts = 0;  // maximal runs of correction actions
    std::int64_t erased_total = 0;
    std::int64_t final_len = 0;
    std::int64_t intent_len = 0;

    bool operator==(const ErrorClassification&) const = default;
};

// Uncorrected classes come from align(final, intent); corrected classes from
// the erased input-stream characters, each compared against the intent
// character at its live position at erase time. Correctly erased characters
// are excluded from IF.
ErrorClassification classify_errors(const ReconstructedTrial& r, const std::string& intent);

// ---- error rates ----

struct ErrorRateDetail {
    double aggregate = 0.0;
    std::map<char32_t, double> per_letter;

    bool operator==(const ErrorRateDetail&) const = default;
};

struct ErrorRates {
    double corrected_er = 0.0;    // erroneous erased / total erased
    double uncorrected_er = 0.0;  // INF / max(|final|, |intent|)
    double total_er = 0.0;        // (INF + IF) / (C + INF + IF)
    ErrorRateDetail insertion_er;
    ErrorRateDetail omission_er;
    ErrorRateDetail substitution_er;

    bool operator==(const ErrorRates&) const = default;
};

// Degenerate denominators yield rate 0 so aggregate reports stay total.
ErrorRates error_rates(const ErrorClassification& c);

// ---- touch dynamics ----

enum class FlightEndpoints { release_press, release_release };

const char* to_string(FlightEndpoints endpoints);
FlightEndpoints flight_endpoints_from_string(const std::string& name);

struct TouchExtent {
    double major_cm = 0.0;
    double minor_cm = 0.0;

    bool operator==(const TouchExtent&) const = default;
};

struct TouchOffset {
    double dx_cm = 0.0;
    double dy_cm = 0.0;

    bool operator==(const TouchOffset&) const = default;
};

struct MotionRecord {
    MotionKind kind = MotionKind::down;
    double x_px = 0.0;
    double y_px = 0.0;
    std::int64_t timestamp_ms = 0;

    bool operator==(const MotionRecord&) const = default;
};

struct TouchDynamics {
    std::vector<double> flight_times_ms;  // one fewer than hold_times
    std::vector<double> hold_times_ms;    // one per key event
    std::vector<TouchExtent> touch_major_minor;
    std::vector<TouchOffset> touch_offsets_cm;
    std::vector<std::string> key_selected;
    std::vector<MotionRecord> motion_info;
    std::vector<std::int64_t> input_timestamps_ms;

    bool operator==(const TouchDynamics&) const = default;
};

// Hold = up - down per key; flight = next press (or release) minus release,
// per the configured endpoint convention. Offsets compare the down sample
// against the key centroid and convert px -> cm via the device density.
// Input timestamps merge key downs with cursor-change timestamps.
TouchDynamics touch_dynamics(const Trial& trial, const DeviceInfo& device,
                             FlightEndpoints endpoints = FlightEndpoints::release_press);

// ---- session metrics record ----

struct SessionMetrics {
    CollectionMode mode = CollectionMode::implicit;
    std::int64_t trial_start_ts_ms = 0;
    std::int64_t trial_end_ts_ms = 0;

    std::optional<double> wpm;
    std::optional<double> words_per_second;
    std::optional<double> seconds_per_word;

    std::optional<double> corrected_er;
    std::optional<double> uncorrected_er;
    std::optional<double> total_er;
    std::optional<ErrorRateDetail> insertion_er;
    std::optional<ErrorRateDetail> omission_er;
    std::optional<ErrorRateDetail> substitution_er;
    std::int64_t error_correction_attempts = 0;

    std::vector<double> flight_times_ms;
    std::vector<double> hold_times_ms;
    std::vector<TouchExtent> touch_major_minor;
    std::vector<TouchOffset> touch_offsets_cm;
    std::optional<std::vector<std::string>> key_selected;
    std::optional<std::vector<MotionRecord>> motion_info;
    std::vector<std::int64_t> input_timestamps_ms;

    std::int64_t action_count = 0;
    std::int64_t correction_action_count = 0;
    std::int64_t entry_action_count = 0;
    std::int64_t autocorrect_count = 0;
    std::int64_t changed_char_count = 0;
    std::int64_t suggestion_count = 0;
    std::int64_t written_characters = 0;
    std::int64_t written_numbers = 0;
    std::int64_t written_specials = 0;

    std::optional<std::string> raw_text;
    std::optional<std::string> intent_text;
    std::int64_t n_dictionary_hits = 0;
    std::int64_t n_spellcheck_predictions = 0;
    std::optional<double> intent_validation;
    std::vector<LanguageEvent> keyboard_language;

    bool operator==(const SessionMetrics&) const = default;
};

// Intent source for error math: the provided target phrase (transcription) or
// the spell-checker inference (composition/implicit/demo). Transcription
// trials carry both so intent validation can be recorded.
struct IntentInput {
    std::optional<std::string> target;
    std::optional<IntentResult> inferred;
};

struct MetricsOptions {
    FlightEndpoints flight_endpoints = FlightEndpoints::release_press;
    std::int64_t per_letter_cap = 2000;  // skip per-letter maps beyond this length
};

// Populates every field computable for the trial's mode (the privacy gate
// re-enforces the same policy before persistence). Error math runs against
// the target when present, otherwise against the inferred intent sentence.
SessionMetrics compute_session_metrics(const ReconstructedTrial& r, const ActiveTrial& trial,
                                       const IntentInput& intent, const DeviceInfo& device,
                                       const MetricsOptions& options = {});

}  // namespace wildkey
