#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wildkey {

// Canonical event, session and device types. All timestamps are integer
// milliseconds on an arbitrary per-session monotonic epoch; wall-clock
// ordering across sessions is a storage-level concern.

struct DeviceInfo {
    std::string os_version;
    std::string brand;
    std::string model;
    int screen_width_px = 0;
    int screen_height_px = 0;
    double density_px_per_cm = 0.0;

    bool operator==(const DeviceInfo&) const = default;
};

enum class MotionKind { down, move, up };

struct TouchSample {
    double x_px = 0.0;
    double y_px = 0.0;
    double touch_major_px = 0.0;
    double touch_minor_px = 0.0;
    MotionKind motion_kind = MotionKind::down;
    std::int64_t timestamp_ms = 0;

    bool operator==(const TouchSample&) const = default;
};

// Key identity. `character` carries the codepoint, `suggestion_select` the
// index into the most recent SuggestionSnapshot; the selected word is
// resolved at reconstruction time so raw events stay content-light.
enum class KeyKind {
    character,
    backspace,
    enter,
    space,
    shift,
    suggestion_select,
    autocorrect_apply,
};

struct Key {
    KeyKind kind = KeyKind::character;
    char32_t codepoint = 0;       // kind == character
    int suggestion_index = 0;     // kind == suggestion_select

    static Key character_key(char32_t cp) { return Key{KeyKind::character, cp, 0}; }
    static Key backspace() { return Key{KeyKind::backspace, 0, 0}; }
    static Key enter() { return Key{KeyKind::enter, 0, 0}; }
    static Key space() { return Key{KeyKind::space, 0, 0}; }
    static Key shift() { return Key{KeyKind::shift, 0, 0}; }
    static Key suggestion(int index) { return Key{KeyKind::suggestion_select, 0, index}; }
    static Key autocorrect() { return Key{KeyKind::autocorrect_apply, 0, 0}; }

    bool operator==(const Key&) const = default;
};

struct KeyEvent {
    Key key;
    std::int64_t down_ts_ms = 0;
    std::int64_t up_ts_ms = 0;
    std::vector<TouchSample> touch_trace;
    double key_centroid_x_px = 0.0;
    double key_centroid_y_px = 0.0;
    double key_width_px = 0.0;
    double key_height_px = 0.0;

    bool operator==(const KeyEvent&) const = default;
};

struct CursorChange {
    std::int64_t timestamp_ms = 0;
    std::int64_t new_position = 0;
    std::int64_t selection_end = 0;  // == new_position when no selection

    bool operator==(const CursorChange&) const = default;
};

struct SuggestionSnapshot {
    std::int64_t timestamp_ms = 0;
    std::vector<std::string> ranked_words;  // descending rank; may be empty

    bool operator==(const SuggestionSnapshot&) const = default;
};

enum class FieldKind { normal, password, numeric };

struct FieldContext {
    FieldKind field_kind = FieldKind::normal;
    std::int64_t preexisting_text_len = 0;

    bool operator==(const FieldContext&) const = default;
};

struct LanguageEvent {
    std::int64_t timestamp_ms = 0;
    std::string language;

    bool operator==(const LanguageEvent&) const = default;
};

struct RawSession {
    std::string session_id;
    std::string user_token;
    DeviceInfo device;
    FieldContext field;
    std::vector<LanguageEvent> keyboard_language_events;
    std::vector<KeyEvent> key_events;
    std::vector<CursorChange> cursor_changes;
    std::vector<SuggestionSnapshot> suggestions;
    std::int64_t keyboard_shown_ts_ms = 0;
    std::int64_t keyboard_hidden_ts_ms = 0;
    bool incognito = false;

    bool operator==(const RawSession&) const = default;
};

enum class CollectionMode { implicit, transcription, composition, demo };

const char* to_string(CollectionMode mode);
const char* to_string(KeyKind kind);
const char* to_string(MotionKind kind);
const char* to_string(FieldKind kind);

// Human-readable label of a key ("h", "space", "suggestion:2", ...), used by
// the key_selected metric and diagnostics.
std::string key_label(const Key& key);

// One broken invariant. `entity` names the offending field or element
// (e.g. "key_events[3]"), `rule` the violated constraint.
struct Violation {
    std::string entity;
    std::string rule;

    bool operator==(const Violation&) const = default;
};

// Pure invariant check; empty result iff the session is well formed.
// Violations are data, not failures.
std::vector<Violation> validate_session(const RawSession& session);

}  // namespace wildkey
