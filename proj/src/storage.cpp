#include "wildkey/storage.hpp"

#include <algorithm>
#include <fstream>

#include "wildkey/errors.hpp"
#include "wildkey/json_io.hpp"
#include "wildkey/zip.hpp"

namespace fs = std::filesystem;

namespace wildkey {

void to_json(nlohmann::json& j, const StoredRecord& v) {
    j = nlohmann::json::object();
    j["schema_version"] = v.schema_version;
    j["record_kind"] = v.kind == RecordKind::metrics ? "metrics" : "discard";
    j["token"] = v.token;
    j["study_id"] = v.study_id;
    if (v.task_id) j["task_id"] = *v.task_id;
    j["wall_ts_ms"] = v.wall_ts_ms;
    j["seq"] = v.seq;
    j["session_id"] = v.session_id;
    j["trial_id"] = v.trial_id;
    if (v.metrics) j["metrics"] = v.metrics->get();
    if (v.discard) j["discard"] = *v.discard;
}

void from_json(const nlohmann::json& j, StoredRecord& v) {
    v = StoredRecord{};
    j.at("schema_version").get_to(v.schema_version);
    const std::string kind = j.at("record_kind").get<std::string>();
    if (kind == "metrics") {
        v.kind = RecordKind::metrics;
    } else if (kind == "discard") {
        v.kind = RecordKind::discard;
    } else {
        throw ConfigError("bad record_kind: " + kind);
    }
    j.at("token").get_to(v.token);
    j.at("study_id").get_to(v.study_id);
    if (j.contains("task_id")) v.task_id = j.at("task_id").get<std::string>();
    j.at("wall_ts_ms").get_to(v.wall_ts_ms);
    j.at("seq").get_to(v.seq);
    j.at("session_id").get_to(v.session_id);
    j.at("trial_id").get_to(v.trial_id);
    if (j.contains("metrics")) {
        // records re-pass the gate on load; redaction is idempotent
        v.metrics = redact(j.at("metrics").get<SessionMetrics>());
    }
    if (j.contains("discard")) v.discard = j.at("discard").get<DiscardRecord>();
}

namespace {

std::vector<StoredRecord> read_jsonl_records(const fs::path& file) {
    std::vector<StoredRecord> out;
    std::ifstream in(file, std::ios::binary);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(nlohmann::json::parse(line).get<StoredRecord>());
    }
    return out;
}

}  // namespace

Store::Store(fs::path root) : root_(std::move(root)) {
    fs::create_directories(root_ / "records");
    rescan();
}

void Store::rescan() {
    tokens_.clear();
    const fs::path records = root_ / "records";
    if (!fs::exists(records)) return;
    for (const auto& study_dir : fs::directory_iterator(records)) {
        if (!study_dir.is_directory()) continue;
        for (const auto& file : fs::directory_iterator(study_dir.path())) {
            if (file.path().extension() != ".jsonl") continue;
            const std::string token = file.path().stem().string();
            TokenState& state = tokens_[token];
            state.study_ids.insert(study_dir.path().filename().string());
            for (const StoredRecord& r : read_jsonl_records(file.path())) {
                state.last_seq = std::max(state.last_seq, r.seq);
                ++state.record_count;
            }
        }
    }
}

fs::path Store::record_path(const std::string& study_id, const std::string& token) const {
    return root_ / "records" / study_id / (token + ".jsonl");
}

std::int64_t Store::last_seq(const std::string& token) const {
    auto it = tokens_.find(token);
    return it == tokens_.end() ? -1 : it->second.last_seq;
}

bool Store::has_token(const std::string& token) const { return tokens_.count(token) > 0; }

std::vector<std::string> Store::tokens() const {
    std::vector<std::string> out;
    for (const auto& [token, state] : tokens_) out.push_back(token);
    return out;
}

std::vector<StoredRecord> Store::records_for(const std::string& token) const {
    std::vector<StoredRecord> out;
    auto it = tokens_.find(token);
    if (it == tokens_.end()) return out;
    for (const std::string& study : it->second.study_ids) {
        const fs::path path = record_path(study, token);
        if (!fs::exists(path)) continue;
        std::vector<StoredRecord> records = read_jsonl_records(path);
        out.insert(out.end(), records.begin(), records.end());
    }
    std::sort(out.begin(), out.end(),
              [](const StoredRecord& a, const StoredRecord& b) { return a.seq < b.seq; });
    return out;
}

void Store::scan(const std::function<void(const StoredRecord&)>& fn) const {
    for (const auto& [token, state] : tokens_) {
        for (const StoredRecord& r : records_for(token)) fn(r);
    }
}

bool Store::append(const StoredRecord& record) {
    TokenState& state = tokens_[record.token];
    if (record.seq <= state.last_seq) return false;  // already acknowledged

    const fs::path path = record_path(record.study_id, record.token);
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw PersistenceError("cannot open store file: " + path.string());
    out << nlohmann::json(record).dump() << "\n";
    out.flush();
    if (!out) throw PersistenceError("store write failed: " + path.string());

    state.last_seq = record.seq;
    ++state.record_count;
    state.study_ids.insert(record.study_id);
    return true;
}

void Store::delete_token(const std::string& token) {
    auto it = tokens_.find(token);
    if (it == tokens_.end()) throw NotFoundError("unknown token: " + token);
    for (const std::string& study : it->second.study_ids) {
        std::error_code ec;
        fs::remove(record_path(study, token), ec);
        if (ec) throw PersistenceError("delete failed for token " + token + ": " + ec.message());
    }
    tokens_.erase(it);
    write_index();
}

void Store::write_index() const {
    nlohmann::json j;
    j["index_version"] = 1;
    nlohmann::json toks = nlohmann::json::object();
    for (const auto& [token, state] : tokens_) {
        toks[token] = {{"last_seq", state.last_seq},
                       {"record_count", state.record_count},
                       {"study_ids", state.study_ids}};
    }
    j["tokens"] = toks;
    std::ofstream out(root_ / "index.json", std::ios::binary | std::ios::trunc);
    out << j.dump(2) << "\n";
}

SyncBuffer::SyncBuffer(fs::path wal_path, const Store& store) : wal_path_(std::move(wal_path)) {
    if (fs::exists(wal_path_)) {
        for (StoredRecord& r : read_jsonl_records(wal_path_)) {
            next_seq_[r.token] = std::max(next_seq_[r.token], r.seq + 1);
            pending_.push_back(std::move(r));
        }
    }
    for (const std::string& token : store.tokens()) {
        const std::int64_t last = store.last_seq(token);
        flushed_[token] = last;
        next_seq_[token] = std::max(next_seq_[token], last + 1);
    }
}

void SyncBuffer::enqueue(StoredRecord record) {
    auto [it, inserted] = next_seq_.try_emplace(record.token, 0);
    record.seq = it->second;

    std::ofstream out(wal_path_, std::ios::binary | std::ios::app);
    if (!out) throw PersistenceError("cannot open write-ahead file: " + wal_path_.string());
    out << nlohmann::json(record).dump() << "\n";
    out.flush();
    if (!out) throw PersistenceError("write-ahead append failed: " + wal_path_.string());

    it->second = record.seq + 1;
    pending_.push_back(std::move(record));
}

std::int64_t SyncBuffer::flushed_through(const std::string& token) const {
    auto it = flushed_.find(token);
    return it == flushed_.end() ? -1 : it->second;
}

void SyncBuffer::purge_token(const std::string& token) {
    pending_.erase(std::remove_if(pending_.begin(), pending_.end(),
                                  [&](const StoredRecord& r) { return r.token == token; }),
                   pending_.end());
    rewrite_wal();
}

void SyncBuffer::rewrite_wal() {
    const fs::path tmp = wal_path_.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw PersistenceError("cannot rewrite write-ahead file");
        for (const StoredRecord& r : pending_) out << nlohmann::json(r).dump() << "\n";
        out.flush();
        if (!out) throw PersistenceError("write-ahead rewrite failed");
    }
    fs::rename(tmp, wal_path_);
}

std::size_t flush(SyncBuffer& buffer, Store& store, bool connectivity) {
    if (!connectivity) return 0;
    std::lock_guard<std::mutex> lock(store.mutex());

    std::size_t acked = 0;
    try {
        while (!buffer.pending_.empty()) {
            const StoredRecord& record = buffer.pending_.front();
            if (store.append(record)) {
                buffer.flushed_[record.token] =
                    std::max(buffer.flushed_[record.token], record.seq);
            }
            buffer.pending_.pop_front();
            ++acked;
            if (buffer.fault_hook_) buffer.fault_hook_(acked);
        }
    } catch (...) {
        // acknowledged prefix is already durable in the store; everything else
        // is still covered by the write-ahead file for the next recovery
        store.write_index();
        throw;
    }
    buffer.rewrite_wal();
    store.write_index();
    return acked;
}

void export_user(const Store& store, const std::string& token,
                 const std::string& archive_path) {
    if (!store.has_token(token)) throw NotFoundError("unknown token: " + token);
    std::map<std::string, std::string> per_study;  // study_id -> jsonl body
    for (const StoredRecord& r : store.records_for(token)) {
        per_study[r.study_id] += nlohmann::json(r).dump();
        per_study[r.study_id] += '\n';
    }
    std::vector<ZipEntry> entries;
    for (const auto& [study, body] : per_study) {
        entries.push_back({study + "/" + token + ".jsonl", body});
    }
    write_zip(archive_path, entries);
}

void delete_user(Store& store, SyncBuffer& buffer, const std::string& token) {
    const bool in_store = store.has_token(token);
    const bool buffered = std::any_of(buffer.pending().begin(), buffer.pending().end(),
                                      [&](const StoredRecord& r) { return r.token == token; });
    if (!in_store && !buffered) throw NotFoundError("unknown token: " + token);
    std::lock_guard<std::mutex> lock(store.mutex());
    buffer.purge_token(token);
    if (in_store) store.delete_token(token);
}

}  // namespace wildkey
