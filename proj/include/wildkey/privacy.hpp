#pragma once
#include <map>
#include <set>
#include <string>

#include "wildkey/metrics.hpp"

namespace wildkey {

// Mode/field allow-matrix and the no-raw-text guarantee. This is the single
// choke-point between computed metrics and persistence: records enter storage
// only as RedactedMetrics.

class FieldPolicy {
  public:
    static const FieldPolicy& instance();

    bool allowed(CollectionMode mode, const std::string& field) const;
    const std::set<std::string>& allowed_fields(CollectionMode mode) const;
    const std::set<std::string>& all_fields() const { return fields_; }

    // Matrix rendering for the versioned audit file shipped with the repo.
    std::string to_json_string() const;

  private:
    FieldPolicy();
    std::set<std::string> fields_;
    std::map<CollectionMode, std::set<std::string>> allowed_;
};

class RedactedMetrics;

// Strips every field the policy disallows for the record's mode. Idempotent;
// allowed fields pass through unchanged. In implicit mode the intent survives
// only as the per-word provenance counts.
RedactedMetrics redact(const SessionMetrics& m);

// Proof-of-redaction wrapper; constructible only through redact().
class RedactedMetrics {
  public:
    const SessionMetrics& get() const { return m_; }
    bool operator==(const RedactedMetrics& other) const { return m_ == other.m_; }

  private:
    friend RedactedMetrics redact(const SessionMetrics&);
    explicit RedactedMetrics(SessionMetrics m) : m_(std::move(m)) {}
    SessionMetrics m_;
};

// True iff no alphabetic substring of typed_text with length >= 3 appears in
// the serialized record outside schema keys and closed-vocabulary enum
// values. Matching is case-sensitive over the record's JSON values.
bool leak_check(const std::string& serialized_record, const std::string& typed_text);

}  // namespace wildkey
