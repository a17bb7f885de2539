#pragma once
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wildkey/events.hpp"
#include "wildkey/privacy.hpp"
#include "wildkey/segmenter.hpp"

namespace wildkey {

// Local document store mirroring an isolated data controller: a directory of
// JSONL files partitioned by (study_id, token) plus a summary index, fed
// through an append-only write-ahead buffer. Records enter only after
// redaction (enforced by the RedactedMetrics type).

struct UserRecord {
    std::string token;  // random 128-bit base32; never derived from identity
    std::string created_at;
    DeviceInfo device;

    bool operator==(const UserRecord&) const = default;
};

enum class RecordKind { metrics, discard };

struct StoredRecord {
    int schema_version = 1;
    RecordKind kind = RecordKind::metrics;
    std::string token;
    std::string study_id = "default";
    std::optional<std::string> task_id;
    std::int64_t wall_ts_ms = 0;
    std::int64_t seq = 0;  // per-token monotone, assigned at enqueue
    std::string session_id;
    std::string trial_id;
    std::optional<RedactedMetrics> metrics;  // kind == metrics
    std::optional<DiscardRecord> discard;    // kind == discard

    bool operator==(const StoredRecord&) const = default;
};

void to_json(nlohmann::json& j, const StoredRecord& v);
void from_json(const nlohmann::json& j, StoredRecord& v);

class Store {
  public:
    explicit Store(std::filesystem::path root);

    const std::filesystem::path& root() const { return root_; }

    std::int64_t last_seq(const std::string& token) const;
    bool has_token(const std::string& token) const;
    std::vector<std::string> tokens() const;

    // All records for one token, ordered by sequence number.
    std::vector<StoredRecord> records_for(const std::string& token) const;

    // Read-only scan over every record (reporting).
    void scan(const std::function<void(const StoredRecord&)>& fn) const;

    // Appends one record durably; callers must already hold a seq from the
    // buffer. Skips records whose seq is not beyond the token's last (flush
    // idempotence after a crash).
    bool append(const StoredRecord& record);

    // Removes every record for the token; other tokens' files are untouched.
    // Throws NotFoundError for unknown tokens.
    void delete_token(const std::string& token);

    // Rewrites the summary index file from in-memory state.
    void write_index() const;

    std::mutex& mutex() const { return mutex_; }

  private:
    std::filesystem::path record_path(const std::string& study_id,
                                      const std::string& token) const;
    void rescan();

    std::filesystem::path root_;
    struct TokenState {
        std::int64_t last_seq = -1;
        std::int64_t record_count = 0;
        std::set<std::string> study_ids;
    };
    std::map<std::string, TokenState> tokens_;
    mutable std::mutex mutex_;
};

class SyncBuffer {
  public:
    // Recovers pending records from the write-ahead file and initializes the
    // per-token counters from the store.
    SyncBuffer(std::filesystem::path wal_path, const Store& store);

    // Assigns the next per-token sequence number, appends to the write-ahead
    // file (durable across restart) and to the in-memory queue. Throws
    // PersistenceError on write failure; the record is then not enqueued.
    void enqueue(StoredRecord record);

    const std::deque<StoredRecord>& pending() const { return pending_; }
    std::int64_t flushed_through(const std::string& token) const;

    // Drops pending records for one token (right-to-be-forgotten).
    void purge_token(const std::string& token);

    // Test hook: invoked after each record is persisted during flush; may
    // throw to simulate a crash mid-batch.
    void set_flush_fault_hook(std::function<void(std::size_t)> hook) {
        fault_hook_ = std::move(hook);
    }

    friend std::size_t flush(SyncBuffer& buffer, Store& store, bool connectivity);

  private:
    void rewrite_wal();

    std::filesystem::path wal_path_;
    std::deque<StoredRecord> pending_;
    std::map<std::string, std::int64_t> next_seq_;
    std::map<std::string, std::int64_t> flushed_;
    std::function<void(std::size_t)> fault_hook_;
};

// connectivity=false is a no-op. Otherwise moves pending records into the
// store in order, atomically per record; on a mid-batch failure the store
// holds exactly a prefix and the write-ahead file still covers the rest.
// Returns the number of records acknowledged.
std::size_t flush(SyncBuffer& buffer, Store& store, bool connectivity);

// Zip archive of every record for the token (one JSONL file per study),
// stable ordering by sequence number. Throws NotFoundError for unknown
// tokens; the store itself is not modified.
void export_user(const Store& store, const std::string& token,
                 const std::string& archive_path);

// Removes the token's records everywhere, including the pending buffer.
void delete_user(Store& store, SyncBuffer& buffer, const std::string& token);

}  // namespace wildkey
