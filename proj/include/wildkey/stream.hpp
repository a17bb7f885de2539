#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wildkey/segmenter.hpp"

namespace wildkey {

enum class ActionKind { entry, correction_delete, correction_substitute };
enum class CharOrigin { keypress, suggestion, autocorrect };

const char* to_string(ActionKind kind);
const char* to_string(CharOrigin origin);

// One classified keyboard action. `produced` is empty for deletes and may be
// multi-character for suggestion/auto-correct commits (which count as a
// single action regardless of word length). `position` is the live text
// position the action applied at.
struct Action {
    ActionKind kind = ActionKind::entry;
    std::string produced;
    std::int64_t position = 0;
    std::int64_t timestamp_ms = 0;
    CharOrigin source = CharOrigin::keypress;

    bool operator==(const Action&) const = default;
};

// One input-stream slot. Erased characters stay in place as tombstones so the
// final stream reads in adjusted field order. `erased_at_live_pos` is the
// character's position among live characters at the moment of erasure; the
// error classifier compares it against the intent prefix.
struct InputStreamChar {
    char32_t ch = 0;
    std::int64_t entered_ts_ms = 0;
    bool erased = false;
    std::optional<std::int64_t> erased_ts_ms;
    std::optional<std::int64_t> erased_at_live_pos;
    CharOrigin origin = CharOrigin::keypress;

    bool operator==(const InputStreamChar&) const = default;
};

struct ReconstructedTrial {
    std::string trial_id;
    std::vector<InputStreamChar> input_stream;
    std::vector<Action> actions;
    std::string transcribed;
    std::int64_t autocorrect_count = 0;
    std::int64_t suggestion_count = 0;
    std::int64_t changed_char_count = 0;

    bool operator==(const ReconstructedTrial&) const = default;
};

// Replays a trial's events into the input-stream buffer: character inserts at
// the cursor, backspaces deleting the char before the cursor (or the
// selection, one correction per removed character), suggestion/auto-correct
// word replacements, and cursor repositions. Cursor positions are absolute
// field positions; the trial's preexisting_text_len is subtracted and the
// result clamped into the live buffer.
//
// Word commits replace the maximal non-whitespace run before the cursor with
// the resolved word plus a trailing space. suggestion_select resolves against
// the latest snapshot at or before its timestamp (missing snapshot or an
// out-of-range index throws MalformedTrialError); autocorrect_apply takes the
// top-ranked word. Enter and shift produce nothing. A backspace on an empty
// buffer is a no-op recorded as a correction_delete with empty `produced`.
ReconstructedTrial reconstruct(const ActiveTrial& trial);

struct ActionCounts {
    std::int64_t action_count = 0;
    std::int64_t correction_action_count = 0;
    std::int64_t entry_action_count = 0;

    bool operator==(const ActionCounts&) const = default;
};

ActionCounts count_actions(const ReconstructedTrial& r);

// Counts over all entered characters, surviving or not. Whitespace belongs to
// no class.
struct CharClassCounts {
    std::int64_t letters = 0;
    std::int64_t numbers = 0;
    std::int64_t specials = 0;

    bool operator==(const CharClassCounts&) const = default;
};

CharClassCounts char_class_counts(const ReconstructedTrial& r);

}  // namespace wildkey
