#include "wildkey/metrics.hpp"

#include <algorithm>
#include <stdexcept>

#include "wildkey/errors.hpp"
#include "wildkey/text.hpp"

namespace wildkey {

SpeedMetrics speed(std::int64_t transcribed_len, std::int64_t word_count,
                   double trial_seconds) {
    SpeedMetrics out;
    if (trial_seconds <= 0.0) return out;
    out.wpm = (static_cast<double>(transcribed_len) / 5.0) * (60.0 / trial_seconds);
    out.words_per_second = static_cast<double>(word_count) / trial_seconds;
    if (word_count > 0) {
        out.seconds_per_word = trial_seconds / static_cast<double>(word_count);
    }
    return out;
}

Alignment align(const std::string& final_text, const std::string& intent_text) {
    const std::vector<char32_t> f = decode_utf8(final_text);
    const std::vector<char32_t> t = decode_utf8(intent_text);
    const std::size_t n = f.size();
    const std::size_t m = t.size();
    if ((n + 1) * (m + 1) > (std::size_t{1} << 26)) {
        throw MalformedTrialError("alignment input too large (" + std::to_string(n) + " x " +
                                  std::to_string(m) + " chars)");
    }

    // D[i][j] = distance between f[0..i) and t[0..j)
    std::vector<std::vector<std::uint16_t>> d(n + 1, std::vector<std::uint16_t>(m + 1, 0));
    for (std::size_t i = 0; i <= n; ++i) d[i][0] = static_cast<std::uint16_t>(i);
    for (std::size_t j = 0; j <= m; ++j) d[0][j] = static_cast<std::uint16_t>(j);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            const int cost = f[i - 1] == t[j - 1] ? 0 : 1;
            d[i][j] = static_cast<std::uint16_t>(
                std::min({d[i - 1][j - 1] + cost, d[i][j - 1] + 1, d[i - 1][j] + 1}));
        }
    }

    Alignment out;
    out.distance = d[n][m];

    // Backtrace preferring the diagonal (match/substitution), then omission,
    // then insertion; fixed order keeps the op sequence deterministic.
    std::size_t i = n;
    std::size_t j = m;
    std::vector<AlignOp> rev;
    while (i > 0 || j > 0) {
        if (i > 0 && j > 0) {
            const int cost = f[i - 1] == t[j - 1] ? 0 : 1;
            if (d[i][j] == d[i - 1][j - 1] + cost) {
                rev.push_back({cost == 0 ? EditKind::match : EditKind::substitution,
                               f[i - 1], t[j - 1]});
                --i;
                --j;
                continue;
            }
        }
        if (j > 0 && d[i][j] == d[i][j - 1] + 1) {
            rev.push_back({EditKind::omission, 0, t[j - 1]});
            --j;
            continue;
        }
        rev.push_back({EditKind::insertion, f[i - 1], 0});
        --i;
    }
    out.ops.assign(rev.rbegin(), rev.rend());
    return out;
}

ErrorClassification classify_errors(const ReconstructedTrial& r, const std::string& intent) {
    ErrorClassification c;
    const std::vector<char32_t> intent_cps = decode_utf8(intent);
    c.intent_len = static_cast<std::int64_t>(intent_cps.size());
    c.final_len = static_cast<std::int64_t>(decode_utf8(r.transcribed).size());

    for (char32_t cp : intent_cps) ++c.per_letter[cp].intentions;

    const Alignment a = align(r.transcribed, intent);
    for (const AlignOp& op : a.ops) {
        switch (op.kind) {
            case EditKind::match:
                ++c.C;
                break;
            case EditKind::substitution:
                ++c.INF;
                ++c.per_letter[op.intent_ch].substitutions;
                break;
            case EditKind::insertion:
                ++c.INF;
                ++c.per_letter[op.final_ch].insertions;
                break;
            case EditKind::omission:
                ++c.INF;
                ++c.per_letter[op.intent_ch].omissions;
                break;
        }
    }

    for (const InputStreamChar& slot : r.input_stream) {
        if (!slot.erased) continue;
        ++c.erased_total;
        const std::int64_t p = slot.erased_at_live_pos.value_or(0);
        const bool erroneous =
            p >= c.intent_len || intent_cps[static_cast<std::size_t>(p)] != slot.ch;
        if (erroneous) ++c.IF;
    }

    bool in_run = false;
    for (const Action& action : r.actions) {
        const bool correction = action.kind != ActionKind::entry;
        if (correction) {
            ++c.F;
            if (!in_run) ++c.correction_attempts;
        }
        in_run = correction;
    }
    return c;
}

namespace {

double ratio(std::int64_t num, std::int64_t denom) {
    return denom == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(denom);
}

}  // namespace

ErrorRates error_rates(const ErrorClassification& c) {
    ErrorRates out;
    out.corrected_er = ratio(c.IF, c.erased_total);
    out.uncorrected_er = ratio(c.INF, std::max(c.final_len, c.intent_len));
    out.total_er = ratio(c.INF + c.IF, c.C + c.INF + c.IF);

    std::int64_t insertions = 0;
    std::int64_t omissions = 0;
    std::int64_t substitutions = 0;
    std::int64_t intentions = 0;
    for (const auto& [cp, counts] : c.per_letter) {
        insertions += counts.insertions;
        omissions += counts.omissions;
        substitutions += counts.substitutions;
        intentions += counts.intentions;
        if (counts.insertions > 0) {
            out.insertion_er.per_letter[cp] = ratio(counts.insertions, counts.intentions);
        }
        if (counts.omissions > 0) {
            out.omission_er.per_letter[cp] = ratio(counts.omissions, counts.intentions);
        }
        if (counts.substitutions > 0) {
            out.substitution_er.per_letter[cp] = ratio(counts.substitutions, counts.intentions);
        }
    }
    out.insertion_er.aggregate = ratio(insertions, intentions);
    out.omission_er.aggregate = ratio(omissions, intentions);
    out.substitution_er.aggregate = ratio(substitutions, intentions);
    return out;
}

const char* to_string(FlightEndpoints endpoints) {
    return endpoints == FlightEndpoints::release_press ? "release_press" : "release_release";
}

FlightEndpoints flight_endpoints_from_string(const std::string& name) {
    if (name == "release_press") return FlightEndpoints::release_press;
    if (name == "release_release") return FlightEndpoints::release_release;
    throw ConfigError("touch.flight_endpoints must be release_press or release_release, got: " +
                      name);
}

TouchDynamics touch_dynamics(const Trial& trial, const DeviceInfo& device,
                             FlightEndpoints endpoints) {
    TouchDynamics out;
    const double density = device.density_px_per_cm;
    const auto& keys = trial.key_events;

    for (std::size_t i = 0; i < keys.size(); ++i) {
        const KeyEvent& ev = keys[i];
        out.hold_times_ms.push_back(static_cast<double>(ev.up_ts_ms - ev.down_ts_ms));
        if (i + 1 < keys.size()) {
            const std::int64_t next = endpoints == FlightEndpoints::release_press
                                          ? keys[i + 1].down_ts_ms
                                          : keys[i + 1].up_ts_ms;
            out.flight_times_ms.push_back(static_cast<double>(next - ev.up_ts_ms));
        }
        if (!ev.touch_trace.empty()) {
            const TouchSample& down = ev.touch_trace.front();
            out.touch_major_minor.push_back(
                {down.touch_major_px / density, down.touch_minor_px / density});
            out.touch_offsets_cm.push_back({(down.x_px - ev.key_centroid_x_px) / density,
                                            (down.y_px - ev.key_centroid_y_px) / density});
            for (const TouchSample& s : ev.touch_trace) {
                out.motion_info.push_back({s.motion_kind, s.x_px, s.y_px, s.timestamp_ms});
            }
        }
        out.key_selected.push_back(key_label(ev.key));
        out.input_timestamps_ms.push_back(ev.down_ts_ms);
    }
    for (const CursorChange& c : trial.cursor_changes) {
        out.input_timestamps_ms.push_back(c.timestamp_ms);
    }
    std::sort(out.input_timestamps_ms.begin(), out.input_timestamps_ms.end());
    return out;
}

SessionMetrics compute_session_metrics(const ReconstructedTrial& r, const ActiveTrial& active,
                                       const IntentInput& intent, const DeviceInfo& device,
                                       const MetricsOptions& options) {
    const Trial& trial = active.get();
    if (!intent.target && !intent.inferred) {
        throw std::logic_error("compute_session_metrics: no intent source");
    }
    const bool explicit_mode = trial.mode != CollectionMode::implicit;

    SessionMetrics m;
    m.mode = trial.mode;
    m.trial_start_ts_ms = trial.start_ts_ms;
    m.trial_end_ts_ms = trial.end_ts_ms;

    // Speed spans first to last character entry.
    const double trial_seconds =
        static_cast<double>(trial.key_events.back().down_ts_ms -
                            trial.key_events.front().down_ts_ms) /
        1000.0;
    const std::int64_t transcribed_len =
        static_cast<std::int64_t>(decode_utf8(r.transcribed).size());
    const std::int64_t word_count =
        static_cast<std::int64_t>(split_words(r.transcribed).size());
    const SpeedMetrics sp = speed(transcribed_len, word_count, trial_seconds);
    m.wpm = sp.wpm;
    m.words_per_second = sp.words_per_second;
    m.seconds_per_word = sp.seconds_per_word;

    const std::string intent_sentence =
        intent.target ? *intent.target : intent.inferred->sentence();
    const ErrorClassification cls = classify_errors(r, intent_sentence);
    const ErrorRates rates = error_rates(cls);
    m.corrected_er = rates.corrected_er;
    m.uncorrected_er = rates.uncorrected_er;
    m.total_er = rates.total_er;
    if (explicit_mode) {
        m.insertion_er = rates.insertion_er;
        m.omission_er = rates.omission_er;
        m.substitution_er = rates.substitution_er;
        if (transcribed_len > options.per_letter_cap) {
            m.insertion_er->per_letter.clear();
            m.omission_er->per_letter.clear();
            m.substitution_er->per_letter.clear();
        }
    }
    m.error_correction_attempts = cls.correction_attempts;

    TouchDynamics touch = touch_dynamics(trial, device, options.flight_endpoints);
    m.flight_times_ms = std::move(touch.flight_times_ms);
    m.hold_times_ms = std::move(touch.hold_times_ms);
    m.touch_major_minor = std::move(touch.touch_major_minor);
    m.touch_offsets_cm = std::move(touch.touch_offsets_cm);
    m.input_timestamps_ms = std::move(touch.input_timestamps_ms);
    if (trial.mode == CollectionMode::transcription ||
        trial.mode == CollectionMode::composition) {
        m.key_selected = std::move(touch.key_selected);
        m.motion_info = std::move(touch.motion_info);
    }

    const ActionCounts actions = count_actions(r);
    m.action_count = actions.action_count;
    m.correction_action_count = actions.correction_action_count;
    m.entry_action_count = actions.entry_action_count;
    m.autocorrect_count = r.autocorrect_count;
    m.changed_char_count = r.changed_char_count;
    m.suggestion_count = r.suggestion_count;
    const CharClassCounts chars = char_class_counts(r);
    m.written_characters = chars.letters;
    m.written_numbers = chars.numbers;
    m.written_specials = chars.specials;

    if (explicit_mode) m.raw_text = r.transcribed;
    if (intent.inferred) {
        if (explicit_mode) m.intent_text = intent.inferred->sentence();
        for (const IntentWord& w : intent.inferred->intent_words) {
            if (w.provenance == Provenance::dictionary_hit) ++m.n_dictionary_hits;
            if (w.provenance == Provenance::spellcheck_top) ++m.n_spellcheck_predictions;
        }
    }
    if (trial.mode == CollectionMode::transcription && intent.target && intent.inferred) {
        m.intent_validation = validate_intent(*intent.target, *intent.inferred);
    }
    m.keyboard_language = trial.language_events;
    return m;
}

}  // namespace wildkey
