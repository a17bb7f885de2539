#pragma once
#include <optional>
#include <string>
#include <vector>

#include "wildkey/events.hpp"

namespace wildkey {

enum class TrialStatus { active, discarded, excluded };

// One segmented text-entry trial. Event vectors are copies of the parent
// session's slices; trials are immutable values and safe to process in
// parallel.
struct Trial {
    std::string trial_id;
    std::string parent_session;
    CollectionMode mode = CollectionMode::implicit;
    TrialStatus status = TrialStatus::active;
    std::vector<KeyEvent> key_events;
    std::vector<CursorChange> cursor_changes;
    std::vector<SuggestionSnapshot> suggestions;
    std::vector<LanguageEvent> language_events;
    std::int64_t start_ts_ms = 0;  // down_ts of first key event
    std::int64_t end_ts_ms = 0;    // up_ts of last key event
    std::int64_t preexisting_text_len = 0;
    std::optional<std::string> target_phrase;  // transcription only
    std::optional<std::string> prompt;         // composition only

    bool operator==(const Trial&) const = default;
};

enum class DiscardReason { cursor_into_preexisting_text, password_field, numeric_only, incognito };

const char* to_string(DiscardReason reason);

struct DiscardRecord {
    std::string trial_id;
    DiscardReason reason = DiscardReason::cursor_into_preexisting_text;
    std::int64_t chars_written = 0;  // entry actions only

    bool operator==(const DiscardRecord&) const = default;
};

// Splits a session's key events into trials: a new trial starts whenever the
// gap between consecutive key-event down timestamps is strictly greater than
// idle_timeout_ms. Cursor changes and suggestion snapshots roll forward into
// the trial they can still affect; language events carry the tag active at
// trial start plus any changes inside the trial window.
// Empty sessions produce zero trials.
std::vector<Trial> segment(const RawSession& session, std::int64_t idle_timeout_ms,
                           CollectionMode mode = CollectionMode::implicit);

struct ClassifyResult {
    TrialStatus status = TrialStatus::active;
    std::optional<DiscardRecord> discard;
};

// Password/numeric fields and incognito sessions are excluded outright (no
// metrics at all); a cursor move into preexisting text discards the trial but
// keeps the entry-action count. Everything else stays active.
ClassifyResult classify(const Trial& trial, const FieldContext& field, bool incognito);

// Proof-of-classification wrapper: metrics operations accept only this type.
class ActiveTrial {
  public:
    explicit ActiveTrial(Trial trial);
    const Trial& get() const { return trial_; }

  private:
    Trial trial_;
};

}  // namespace wildkey
