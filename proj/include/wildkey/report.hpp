#pragma once
#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "wildkey/storage.hpp"
#include "wildkey/study.hpp"

namespace wildkey {

enum class GroupBy { user, task_kind, day };

const char* to_string(GroupBy g);
GroupBy group_by_from_string(const std::string& s);

struct AggregateQuery {
    std::string study_id;
    std::optional<std::string> token;
    std::int64_t from_wall_ts_ms = 0;
    std::int64_t to_wall_ts_ms = 0;
    GroupBy group_by = GroupBy::user;
};

struct AggregateRow {
    std::string group_key;
    double avg_wpm = 0.0;
    std::int64_t total_chars_written = 0;
    std::int64_t session_count = 0;
    double avg_total_er = 0.0;
    std::optional<double> compliance;  // completed / assigned, elapsed slots only

    bool operator==(const AggregateRow&) const = default;
};

struct AggregateReport {
    std::vector<AggregateRow> rows;

    bool operator==(const AggregateReport&) const = default;
};

void to_json(nlohmann::json& j, const AggregateReport& v);

// Session-count-weighted aggregates over metric records whose wall-clock
// timestamp lies in [from, to]. Groups with zero sessions are omitted.
// Compliance is filled for user grouping when a plan is supplied: the
// denominator counts only task slots whose timeframe has fully elapsed
// before the query end.
AggregateReport aggregate(const Store& store, const AggregateQuery& q,
                          const StudyPlan* plan = nullptr);

std::string report_to_markdown(const AggregateReport& report);

// Wall-clock day key (UTC) for a wall timestamp.
std::string wall_day(std::int64_t wall_ts_ms);

}  // namespace wildkey
