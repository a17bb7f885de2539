#include "wildkey/segmenter.hpp"

#include <algorithm>
#include <stdexcept>

namespace wildkey {

const char* to_string(DiscardReason reason) {
    switch (reason) {
        case DiscardReason::cursor_into_preexisting_text: return "cursor_into_preexisting_text";
        case DiscardReason::password_field: return "password_field";
        case DiscardReason::numeric_only: return "numeric_only";
        case DiscardReason::incognito: return "incognito";
    }
    return "cursor_into_preexisting_text";
}

std::vector<Trial> segment(const RawSession& session, std::int64_t idle_timeout_ms,
                           CollectionMode mode) {
    std::vector<Trial> trials;
    if (session.key_events.empty()) return trials;

    // Key-event index ranges, split on strict > timeout gaps between downs.
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    std::size_t begin = 0;
    for (std::size_t i = 1; i < session.key_events.size(); ++i) {
        std::int64_t gap = session.key_events[i].down_ts_ms - session.key_events[i - 1].down_ts_ms;
        if (gap > idle_timeout_ms) {
            ranges.emplace_back(begin, i);
            begin = i;
        }
    }
    ranges.emplace_back(begin, session.key_events.size());

    std::int64_t prev_end = session.keyboard_shown_ts_ms - 1;
    for (std::size_t t = 0; t < ranges.size(); ++t) {
        auto [lo, hi] = ranges[t];
        Trial trial;
        trial.trial_id = session.session_id + "/" + std::to_string(t);
        trial.parent_session = session.session_id;
        trial.mode = mode;
        trial.status = TrialStatus::active;
        trial.key_events.assign(session.key_events.begin() + lo, session.key_events.begin() + hi);
        trial.start_ts_ms = trial.key_events.front().down_ts_ms;
        trial.end_ts_ms = trial.key_events.back().up_ts_ms;
        trial.preexisting_text_len = session.field.preexisting_text_len;

        // Cursor changes and snapshots from the previous trial's end up to this
        // trial's end affect this trial's replay (a reposition during the idle
        // gap moves the insertion point for what follows). Events after the
        // final trial's end cannot affect any trial and are dropped.
        for (const CursorChange& c : session.cursor_changes) {
            if (c.timestamp_ms > prev_end && c.timestamp_ms <= trial.end_ts_ms) {
                trial.cursor_changes.push_back(c);
            }
        }
        for (const SuggestionSnapshot& s : session.suggestions) {
            if (s.timestamp_ms > prev_end && s.timestamp_ms <= trial.end_ts_ms) {
                trial.suggestions.push_back(s);
            }
        }

        // Language tag active at trial start, then changes inside the window.
        const LanguageEvent* current = nullptr;
        for (const LanguageEvent& ev : session.keyboard_language_events) {
            if (ev.timestamp_ms <= trial.start_ts_ms) {
                current = &ev;
            } else if (ev.timestamp_ms <= trial.end_ts_ms) {
                trial.language_events.push_back(ev);
            }
        }
        if (current != nullptr) {
            trial.language_events.insert(trial.language_events.begin(),
                                         LanguageEvent{trial.start_ts_ms, current->language});
        }

        prev_end = trial.end_ts_ms;
        trials.push_back(std::move(trial));
    }
    return trials;
}

namespace {

// Entry actions countable without reconstruction: character and space keys,
// plus suggestion picks (one action each).
std::int64_t entry_action_estimate(const Trial& trial) {
    std::int64_t n = 0;
    for (const KeyEvent& ev : trial.key_events) {
        switch (ev.key.kind) {
            case KeyKind::character:
            case KeyKind::space:
            case KeyKind::suggestion_select:
                ++n;
                break;
            default:
                break;
        }
    }
    return n;
}

}  // namespace

ClassifyResult classify(const Trial& trial, const FieldContext& field, bool incognito) {
    ClassifyResult result;
    if (field.field_kind == FieldKind::password) {
        result.status = TrialStatus::excluded;
        result.discard = DiscardRecord{trial.trial_id, DiscardReason::password_field, 0};
        return result;
    }
    if (field.field_kind == FieldKind::numeric) {
        result.status = TrialStatus::excluded;
        result.discard = DiscardRecord{trial.trial_id, DiscardReason::numeric_only, 0};
        return result;
    }
    if (incognito) {
        result.status = TrialStatus::excluded;
        result.discard = DiscardRecord{trial.trial_id, DiscardReason::incognito, 0};
        return result;
    }
    for (const CursorChange& c : trial.cursor_changes) {
        // Selections straddling the preexisting boundary also discard.
        if (c.new_position < field.preexisting_text_len) {
            result.status = TrialStatus::discarded;
            result.discard = DiscardRecord{trial.trial_id,
                                           DiscardReason::cursor_into_preexisting_text,
                                           entry_action_estimate(trial)};
            return result;
        }
    }
    result.status = TrialStatus::active;
    return result;
}

ActiveTrial::ActiveTrial(Trial trial) : trial_(std::move(trial)) {
    if (trial_.status != TrialStatus::active) {
        throw std::logic_error("ActiveTrial requires status == active");
    }
    if (trial_.key_events.empty()) {
        throw std::logic_error("active trials have >= 1 key event");
    }
}

}  // namespace wildkey
