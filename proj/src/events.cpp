#include "wildkey/events.hpp"

#include "wildkey/text.hpp"

namespace wildkey {

const char* to_string(CollectionMode mode) {
    switch (mode) {
        case CollectionMode::implicit: return "implicit";
        case CollectionMode::transcription: return "transcription";
        case CollectionMode::composition: return "composition";
        case CollectionMode::demo: return "demo";
    }
    return "implicit";
}

const char* to_string(KeyKind kind) {
    switch (kind) {
        case KeyKind::character: return "character";
        case KeyKind::backspace: return "backspace";
        case KeyKind::enter: return "enter";
        case KeyKind::space: return "space";
        case KeyKind::shift: return "shift";
        case KeyKind::suggestion_select: return "suggestion_select";
        case KeyKind::autocorrect_apply: return "autocorrect_apply";
    }
    return "character";
}

const char* to_string(MotionKind kind) {
    switch (kind) {
        case MotionKind::down: return "down";
        case MotionKind::move: return "move";
        case MotionKind::up: return "up";
    }
    return "down";
}

const char* to_string(FieldKind kind) {
    switch (kind) {
        case FieldKind::normal: return "normal";
        case FieldKind::password: return "password";
        case FieldKind::numeric: return "numeric";
    }
    return "normal";
}

std::string key_label(const Key& key) {
    switch (key.kind) {
        case KeyKind::character: return encode_utf8(key.codepoint);
        case KeyKind::suggestion_select:
            return "suggestion:" + std::to_string(key.suggestion_index);
        default: return to_string(key.kind);
    }
}

namespace {

void check_touch_sample(const TouchSample& s, const std::string& entity,
                        std::vector<Violation>& out) {
    if (s.touch_minor_px < 0.0 || s.touch_major_px < s.touch_minor_px) {
        out.push_back({entity, "touch_major_px >= touch_minor_px >= 0"});
    }
}

}  // namespace

std::vector<Violation> validate_session(const RawSession& session) {
    std::vector<Violation> out;

    if (session.device.screen_width_px <= 0 || session.device.screen_height_px <= 0) {
        out.push_back({"device", "screen dimensions > 0"});
    }
    if (session.device.density_px_per_cm <= 0.0) {
        out.push_back({"device", "density_px_per_cm > 0"});
    }
    if (session.field.preexisting_text_len < 0) {
        out.push_back({"field", "preexisting_text_len >= 0"});
    }
    if (session.keyboard_hidden_ts_ms < session.keyboard_shown_ts_ms) {
        out.push_back({"session", "keyboard_hidden_ts_ms >= keyboard_shown_ts_ms"});
    }

    auto in_span = [&](std::int64_t ts) {
        return ts >= session.keyboard_shown_ts_ms && ts <= session.keyboard_hidden_ts_ms;
    };

    std::int64_t prev_down = session.keyboard_shown_ts_ms;
    for (std::size_t i = 0; i < session.key_events.size(); ++i) {
        const KeyEvent& ev = session.key_events[i];
        const std::string entity = "key_events[" + std::to_string(i) + "]";
        if (ev.up_ts_ms < ev.down_ts_ms) {
            out.push_back({entity, "up_ts_ms >= down_ts_ms"});
        }
        if (ev.key_width_px <= 0.0 || ev.key_height_px <= 0.0) {
            out.push_back({entity, "key dimensions > 0"});
        }
        if (ev.touch_trace.empty()) {
            out.push_back({entity, "touch_trace nonempty"});
        } else {
            if (ev.touch_trace.front().motion_kind != MotionKind::down ||
                ev.touch_trace.back().motion_kind != MotionKind::up) {
                out.push_back({entity, "touch_trace starts with down and ends with up"});
            }
            for (const TouchSample& s : ev.touch_trace) check_touch_sample(s, entity, out);
        }
        if (!in_span(ev.down_ts_ms) || !in_span(ev.up_ts_ms)) {
            out.push_back({entity, "event outside visibility span"});
        }
        if (ev.down_ts_ms < prev_down) {
            out.push_back({entity, "key_events sorted by down_ts_ms"});
        }
        prev_down = ev.down_ts_ms;
    }

    for (std::size_t i = 0; i < session.cursor_changes.size(); ++i) {
        const CursorChange& c = session.cursor_changes[i];
        const std::string entity = "cursor_changes[" + std::to_string(i) + "]";
        if (c.new_position < 0) out.push_back({entity, "new_position >= 0"});
        if (c.selection_end < c.new_position) {
            out.push_back({entity, "selection_end >= new_position"});
        }
        if (!in_span(c.timestamp_ms)) {
            out.push_back({entity, "event outside visibility span"});
        }
    }

    for (std::size_t i = 0; i < session.suggestions.size(); ++i) {
        if (!in_span(session.suggestions[i].timestamp_ms)) {
            out.push_back({"suggestions[" + std::to_string(i) + "]",
                           "event outside visibility span"});
        }
    }

    for (std::size_t i = 0; i < session.keyboard_language_events.size(); ++i) {
        if (!in_span(session.keyboard_language_events[i].timestamp_ms)) {
            out.push_back({"keyboard_language_events[" + std::to_string(i) + "]",
                           "event outside visibility span"});
        }
    }

    return out;
}

}  // namespace wildkey
