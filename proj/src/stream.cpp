#include "wildkey/stream.hpp"

#include <algorithm>

#include "wildkey/errors.hpp"
#include "wildkey/text.hpp"

namespace wildkey {

const char* to_string(ActionKind kind) {
    switch (kind) {
        case ActionKind::entry: return "entry";
        case ActionKind::correction_delete: return "correction_delete";
        case ActionKind::correction_substitute: return "correction_substitute";
    }
    return "entry";
}

const char* to_string(CharOrigin origin) {
    switch (origin) {
        case CharOrigin::keypress: return "keypress";
        case CharOrigin::suggestion: return "suggestion";
        case CharOrigin::autocorrect: return "autocorrect";
    }
    return "keypress";
}

namespace {

class ReplayBuffer {
  public:
    std::int64_t live_size() const { return live_size_; }

    // Buffer index for inserting at live position p: past the p-th live char
    // and past any tombstones sitting on that boundary, so replacements land
    // after the characters they replaced.
    std::size_t insert_index(std::int64_t p) const {
        std::size_t idx = 0;
        std::int64_t live = 0;
        while (idx < slots_.size() && live < p) {
            if (!slots_[idx].erased) ++live;
            ++idx;
        }
        while (idx < slots_.size() && slots_[idx].erased) ++idx;
        return idx;
    }

    std::size_t live_index(std::int64_t p) const {
        std::size_t idx = 0;
        std::int64_t live = 0;
        for (; idx < slots_.size(); ++idx) {
            if (!slots_[idx].erased) {
                if (live == p) break;
                ++live;
            }
        }
        return idx;
    }

    void insert(std::int64_t live_pos, char32_t ch, std::int64_t ts, CharOrigin origin) {
        InputStreamChar slot;
        slot.ch = ch;
        slot.entered_ts_ms = ts;
        slot.origin = origin;
        slots_.insert(slots_.begin() + static_cast<std::ptrdiff_t>(insert_index(live_pos)),
                      slot);
        ++live_size_;
    }

    // Erases live positions [lo, hi) as one batch: every member's recorded
    // live position is measured before any of the batch is removed.
    void erase_range(std::int64_t lo, std::int64_t hi, std::int64_t ts) {
        std::vector<std::size_t> indices;
        for (std::int64_t p = lo; p < hi; ++p) indices.push_back(live_index(p));
        for (std::size_t k = 0; k < indices.size(); ++k) {
            InputStreamChar& slot = slots_[indices[k]];
            slot.erased = true;
            slot.erased_ts_ms = ts;
            slot.erased_at_live_pos = lo + static_cast<std::int64_t>(k);
            --live_size_;
        }
    }

    char32_t live_char(std::int64_t p) const { return slots_[live_index(p)].ch; }

    std::string live_text() const {
        std::vector<char32_t> cps;
        for (const InputStreamChar& slot : slots_) {
            if (!slot.erased) cps.push_back(slot.ch);
        }
        return encode_utf8(cps);
    }

    std::vector<InputStreamChar> take() { return std::move(slots_); }

  private:
    std::vector<InputStreamChar> slots_;
    std::int64_t live_size_ = 0;
};

std::int64_t clamp64(std::int64_t v, std::int64_t lo, std::int64_t hi) {
    return std::max(lo, std::min(v, hi));
}

const SuggestionSnapshot* snapshot_at(const Trial& trial, std::int64_t ts) {
    const SuggestionSnapshot* latest = nullptr;
    for (const SuggestionSnapshot& s : trial.suggestions) {
        if (s.timestamp_ms <= ts) latest = &s;
    }
    return latest;
}

}  // namespace

ReconstructedTrial reconstruct(const ActiveTrial& active) {
    const Trial& trial = active.get();
    ReconstructedTrial out;
    out.trial_id = trial.trial_id;

    ReplayBuffer buffer;
    std::int64_t cursor = 0;
    std::int64_t sel_end = 0;

    auto delete_selection = [&](std::int64_t ts) {
        for (std::int64_t p = sel_end - 1; p >= cursor; --p) {
            Action a;
            a.kind = ActionKind::correction_delete;
            a.position = p;
            a.timestamp_ms = ts;
            out.actions.push_back(a);
        }
        buffer.erase_range(cursor, sel_end, ts);
        sel_end = cursor;
    };

    auto insert_char = [&](char32_t cp, std::int64_t ts) {
        if (sel_end > cursor) delete_selection(ts);
        buffer.insert(cursor, cp, ts, CharOrigin::keypress);
        Action a;
        a.kind = ActionKind::entry;
        a.produced = encode_utf8(cp);
        a.position = cursor;
        a.timestamp_ms = ts;
        out.actions.push_back(a);
        ++cursor;
        sel_end = cursor;
    };

    // Replaces the maximal non-whitespace run before the cursor with
    // word + ' '. One action regardless of length; the erasure carries no
    // actions of its own.
    auto commit_word = [&](const std::string& word, std::int64_t ts, CharOrigin origin) {
        sel_end = cursor;
        std::int64_t word_start = cursor;
        while (word_start > 0 && !is_whitespace(buffer.live_char(word_start - 1))) --word_start;
        buffer.erase_range(word_start, cursor, ts);

        std::vector<char32_t> cps = decode_utf8(word);
        cps.push_back(U' ');
        std::int64_t p = word_start;
        for (char32_t cp : cps) buffer.insert(p++, cp, ts, origin);
        cursor = p;
        sel_end = cursor;

        Action a;
        a.kind = origin == CharOrigin::autocorrect ? ActionKind::correction_substitute
                                                   : ActionKind::entry;
        a.produced = word + " ";
        a.position = word_start;
        a.timestamp_ms = ts;
        a.source = origin;
        out.actions.push_back(a);
    };

    auto apply_key = [&](const KeyEvent& ev) {
        const std::int64_t ts = ev.down_ts_ms;
        switch (ev.key.kind) {
            case KeyKind::character:
                insert_char(ev.key.codepoint, ts);
                break;
            case KeyKind::space:
                insert_char(U' ', ts);
                break;
            case KeyKind::backspace: {
                if (sel_end > cursor) {
                    delete_selection(ts);
                } else if (cursor > 0) {
                    buffer.erase_range(cursor - 1, cursor, ts);
                    Action a;
                    a.kind = ActionKind::correction_delete;
                    a.position = cursor - 1;
                    a.timestamp_ms = ts;
                    out.actions.push_back(a);
                    --cursor;
                    sel_end = cursor;
                } else {
                    // no-op backspace on empty buffer is still a correction
                    Action a;
                    a.kind = ActionKind::correction_delete;
                    a.position = 0;
                    a.timestamp_ms = ts;
                    out.actions.push_back(a);
                }
                break;
            }
            case KeyKind::suggestion_select: {
                const SuggestionSnapshot* snap = snapshot_at(trial, ts);
                if (snap == nullptr ||
                    ev.key.suggestion_index < 0 ||
                    static_cast<std::size_t>(ev.key.suggestion_index) >=
                        snap->ranked_words.size()) {
                    throw MalformedTrialError("trial " + trial.trial_id +
                                              ": suggestion_select index out of range");
                }
                commit_word(snap->ranked_words[static_cast<std::size_t>(
                                ev.key.suggestion_index)],
                            ts, CharOrigin::suggestion);
                ++out.suggestion_count;
                break;
            }
            case KeyKind::autocorrect_apply: {
                const SuggestionSnapshot* snap = snapshot_at(trial, ts);
                if (snap == nullptr || snap->ranked_words.empty()) {
                    throw MalformedTrialError("trial " + trial.trial_id +
                                              ": autocorrect without suggestions");
                }
                commit_word(snap->ranked_words.front(), ts, CharOrigin::autocorrect);
                ++out.autocorrect_count;
                break;
            }
            case KeyKind::enter:
            case KeyKind::shift:
                // control keys produce no input
                break;
        }
    };

    auto apply_cursor = [&](const CursorChange& c) {
        std::int64_t pos = clamp64(c.new_position - trial.preexisting_text_len, 0,
                                   buffer.live_size());
        std::int64_t end = clamp64(c.selection_end - trial.preexisting_text_len, pos,
                                   buffer.live_size());
        cursor = pos;
        sel_end = end;
    };

    // Merge key events and cursor changes by time; a cursor change at the
    // same timestamp as a key applies after it.
    std::size_t ki = 0;
    std::size_t ci = 0;
    while (ki < trial.key_events.size() || ci < trial.cursor_changes.size()) {
        bool take_key;
        if (ki == trial.key_events.size()) {
            take_key = false;
        } else if (ci == trial.cursor_changes.size()) {
            take_key = true;
        } else {
            take_key = trial.key_events[ki].down_ts_ms <=
                       trial.cursor_changes[ci].timestamp_ms;
        }
        if (take_key) {
            apply_key(trial.key_events[ki++]);
        } else {
            apply_cursor(trial.cursor_changes[ci++]);
        }
    }

    out.transcribed = buffer.live_text();
    out.input_stream = buffer.take();
    for (const InputStreamChar& slot : out.input_stream) {
        if (slot.erased) ++out.changed_char_count;
    }
    return out;
}

ActionCounts count_actions(const ReconstructedTrial& r) {
    ActionCounts counts;
    counts.action_count = static_cast<std::int64_t>(r.actions.size());
    for (const Action& a : r.actions) {
        if (a.kind == ActionKind::entry) {
            ++counts.entry_action_count;
        } else {
            ++counts.correction_action_count;
        }
    }
    return counts;
}

CharClassCounts char_class_counts(const ReconstructedTrial& r) {
    CharClassCounts counts;
    for (const InputStreamChar& slot : r.input_stream) {
        if (is_whitespace(slot.ch)) continue;
        if (is_letter(slot.ch)) {
            ++counts.letters;
        } else if (is_digit(slot.ch)) {
            ++counts.numbers;
        } else {
            ++counts.specials;
        }
    }
    return counts;
}

}  // namespace wildkey
