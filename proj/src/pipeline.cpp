#include "wildkey/pipeline.hpp"

#include <fstream>

#include "wildkey/errors.hpp"
#include "wildkey/json_io.hpp"
#include "wildkey/metrics.hpp"
#include "wildkey/privacy.hpp"

namespace wildkey {

void analyze_session(const RawSession& session, const AnalyzeOptions& options,
                     const Dictionary& dict, std::optional<std::string> target,
                     SyncBuffer& buffer, AnalyzeSummary& summary) {
    const std::vector<Trial> trials =
        segment(session, options.config.segmentation_idle_timeout_ms, options.mode);

    for (const Trial& raw_trial : trials) {
        Trial trial = raw_trial;
        const ClassifyResult cls = classify(trial, session.field, session.incognito);
        trial.status = cls.status;

        if (cls.status == TrialStatus::excluded) {
            ++summary.trials_excluded;
            continue;  // nothing is stored for password/numeric/incognito
        }
        if (cls.status == TrialStatus::discarded) {
            ++summary.trials_discarded;
            StoredRecord record;
            record.kind = RecordKind::discard;
            record.token = session.user_token;
            record.study_id = options.study_id;
            record.task_id = options.task_id;
            record.wall_ts_ms = options.wall_base_ms + session.keyboard_shown_ts_ms;
            record.session_id = session.session_id;
            record.trial_id = trial.trial_id;
            record.discard = cls.discard;
            buffer.enqueue(std::move(record));
            continue;
        }

        try {
            if (options.mode == CollectionMode::transcription) {
                if (!target) {
                    throw MalformedTrialError("trial " + trial.trial_id +
                                              ": transcription mode without a target phrase");
                }
                trial.target_phrase = target;
            }
            const ActiveTrial active(trial);
            const ReconstructedTrial r = reconstruct(active);

            IntentInput intent;
            intent.target = trial.target_phrase;
            intent.inferred = infer_intent(dict, r.transcribed,
                                           options.config.intent_max_distance,
                                           options.config.intent_max_suggestions);

            MetricsOptions mopts;
            mopts.flight_endpoints = options.config.touch_flight_endpoints;
            const SessionMetrics metrics =
                compute_session_metrics(r, active, intent, session.device, mopts);

            StoredRecord record;
            record.kind = RecordKind::metrics;
            record.token = session.user_token;
            record.study_id = options.study_id;
            record.task_id = options.task_id;
            record.wall_ts_ms = options.wall_base_ms + session.keyboard_shown_ts_ms;
            record.session_id = session.session_id;
            record.trial_id = trial.trial_id;
            record.metrics = redact(metrics);
            buffer.enqueue(std::move(record));
            ++summary.trials_active;
        } catch (const MalformedTrialError&) {
            ++summary.trials_failed;
        }
    }
}

AnalyzeSummary analyze_file(const std::string& input_path, const AnalyzeOptions& options,
                            const Dictionary& dict, Store& store, SyncBuffer& buffer) {
    std::ifstream in(input_path, std::ios::binary);
    if (!in) throw ConfigError("cannot open input: " + input_path);

    AnalyzeSummary summary;
    std::string line;
    std::size_t session_index = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        RawSession session;
        try {
            session = parse_session_line(line);
        } catch (const std::exception&) {
            ++summary.sessions_malformed;
            ++session_index;
            continue;
        }
        ++summary.sessions_read;
        if (!validate_session(session).empty()) {
            ++summary.sessions_invalid;
            ++session_index;
            continue;
        }
        std::optional<std::string> target;
        if (session_index < options.targets.size()) target = options.targets[session_index];
        analyze_session(session, options, dict, target, buffer, summary);
        ++session_index;
    }

    summary.records_buffered = static_cast<std::int64_t>(buffer.pending().size());
    if (!options.offline) {
        summary.records_written = static_cast<std::int64_t>(flush(buffer, store, true));
        summary.records_buffered = static_cast<std::int64_t>(buffer.pending().size());
    }
    return summary;
}

}  // namespace wildkey
