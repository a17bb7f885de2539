#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wildkey/config.hpp"
#include "wildkey/intent.hpp"
#include "wildkey/storage.hpp"

namespace wildkey {

// The analyze pipeline: validate -> segment -> classify -> reconstruct ->
// intent -> metrics -> redact -> enqueue -> flush.

struct AnalyzeOptions {
    CollectionMode mode = CollectionMode::implicit;
    Config config;
    // Per-session target phrases for transcription mode, by input order; all
    // trials of session i validate against targets[i].
    std::vector<std::string> targets;
    std::optional<std::string> task_id;
    std::string study_id = "default";
    std::int64_t wall_base_ms = 0;  // wall_ts = base + keyboard_shown_ts
    bool strict = false;
    bool offline = false;  // keep records in the write-ahead buffer
};

struct AnalyzeSummary {
    std::int64_t sessions_read = 0;
    std::int64_t sessions_malformed = 0;  // unparseable lines
    std::int64_t sessions_invalid = 0;    // failed validate_session
    std::int64_t trials_active = 0;
    std::int64_t trials_discarded = 0;
    std::int64_t trials_excluded = 0;
    std::int64_t trials_failed = 0;  // reconstruction/intent errors
    std::int64_t records_written = 0;
    std::int64_t records_buffered = 0;

    bool clean() const {
        return sessions_malformed == 0 && sessions_invalid == 0 && trials_failed == 0;
    }
};

// Processes one session already in memory; appends records to the buffer.
void analyze_session(const RawSession& session, const AnalyzeOptions& options,
                     const Dictionary& dict, std::optional<std::string> target,
                     SyncBuffer& buffer, AnalyzeSummary& summary);

// Reads a JSONL event log and runs the full pipeline. Malformed lines are
// counted and skipped.
AnalyzeSummary analyze_file(const std::string& input_path, const AnalyzeOptions& options,
                            const Dictionary& dict, Store& store, SyncBuffer& buffer);

}  // namespace wildkey
