#include "wildkey/report.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "wildkey/errors.hpp"

namespace wildkey {

const char* to_string(GroupBy g) {
    switch (g) {
        case GroupBy::user: return "user";
        case GroupBy::task_kind: return "task_kind";
        case GroupBy::day: return "day";
    }
    return "user";
}

GroupBy group_by_from_string(const std::string& s) {
    if (s == "user") return GroupBy::user;
    if (s == "task_kind") return GroupBy::task_kind;
    if (s == "day") return GroupBy::day;
    throw ConfigError("group_by must be user, task_kind or day, got: " + s);
}

std::string wall_day(std::int64_t wall_ts_ms) {
    std::int64_t days = wall_ts_ms / 86400000;
    if (wall_ts_ms < 0 && wall_ts_ms % 86400000 != 0) --days;
    return format_date(shift_date(Date{1970, 1, 1}, days));
}

namespace {

struct Accumulator {
    double wpm_sum = 0.0;
    std::int64_t wpm_count = 0;
    double er_sum = 0.0;
    std::int64_t er_count = 0;
    std::int64_t chars = 0;
    std::int64_t sessions = 0;
};

std::optional<double> compliance_for(const Store& store, const AggregateQuery& q,
                                     const StudyPlan& plan, const std::string& token) {
    auto it = plan.assignments.find(token);
    if (it == plan.assignments.end()) return std::nullopt;
    const Schedule* schedule = plan.find_schedule(it->second);
    if (schedule == nullptr) return std::nullopt;

    // task slots whose window has fully elapsed before the query end
    struct Slot {
        std::string task_id;
        Date date;
    };
    std::vector<Slot> slots;
    for (const ScheduledTimeframe& stf : schedule->timeframes) {
        const std::int64_t end_ms =
            days_from_epoch(stf.date) * 86400000 +
            static_cast<std::int64_t>(stf.timeframe.end_time.minutes) * 60000;
        if (end_ms >= q.to_wall_ts_ms) continue;
        for (const std::string& task_id : stf.timeframe.task_ids) {
            slots.push_back({task_id, stf.date});
        }
    }
    if (slots.empty()) return std::nullopt;

    std::int64_t completed = 0;
    for (const Slot& slot : slots) {
        bool done = false;
        for (const StoredRecord& r : store.records_for(token)) {
            if (r.kind != RecordKind::metrics || r.study_id != q.study_id) continue;
            if (r.task_id && *r.task_id == slot.task_id &&
                wall_day(r.wall_ts_ms) == format_date(slot.date)) {
                done = true;
                break;
            }
        }
        if (done) ++completed;
    }
    return static_cast<double>(completed) / static_cast<double>(slots.size());
}

}  // namespace

AggregateReport aggregate(const Store& store, const AggregateQuery& q, const StudyPlan* plan) {
    if (q.to_wall_ts_ms < q.from_wall_ts_ms) throw ConfigError("aggregate: from must be <= to");

    std::map<std::string, Accumulator> groups;
    store.scan([&](const StoredRecord& r) {
        if (r.kind != RecordKind::metrics || !r.metrics) return;
        if (r.study_id != q.study_id) return;
        if (q.token && r.token != *q.token) return;
        if (r.wall_ts_ms < q.from_wall_ts_ms || r.wall_ts_ms > q.to_wall_ts_ms) return;

        std::string key;
        switch (q.group_by) {
            case GroupBy::user: key = r.token; break;
            case GroupBy::task_kind: key = to_string(r.metrics->get().mode); break;
            case GroupBy::day: key = wall_day(r.wall_ts_ms); break;
        }
        Accumulator& acc = groups[key];
        const SessionMetrics& m = r.metrics->get();
        ++acc.sessions;
        if (m.wpm) {
            acc.wpm_sum += *m.wpm;
            ++acc.wpm_count;
        }
        if (m.total_er) {
            acc.er_sum += *m.total_er;
            ++acc.er_count;
        }
        acc.chars += m.written_characters + m.written_numbers + m.written_specials;
    });

    AggregateReport report;
    for (const auto& [key, acc] : groups) {
        AggregateRow row;
        row.group_key = key;
        row.session_count = acc.sessions;
        row.total_chars_written = acc.chars;
        row.avg_wpm = acc.wpm_count > 0 ? acc.wpm_sum / static_cast<double>(acc.wpm_count) : 0.0;
        row.avg_total_er = acc.er_count > 0 ? acc.er_sum / static_cast<double>(acc.er_count) : 0.0;
        if (plan != nullptr && q.group_by == GroupBy::user) {
            row.compliance = compliance_for(store, q, *plan, key);
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

void to_json(nlohmann::json& j, const AggregateReport& v) {
    nlohmann::json rows = nlohmann::json::array();
    for (const AggregateRow& r : v.rows) {
        nlohmann::json row = {{"group_key", r.group_key},
                              {"avg_wpm", r.avg_wpm},
                              {"total_chars_written", r.total_chars_written},
                              {"session_count", r.session_count},
                              {"avg_total_er", r.avg_total_er}};
        if (r.compliance) row["compliance"] = *r.compliance;
        rows.push_back(std::move(row));
    }
    j = {{"rows", rows}};
}

std::string report_to_markdown(const AggregateReport& report) {
    std::ostringstream out;
    out << "| group | sessions | avg wpm | chars written | avg total ER | compliance |\n";
    out << "|---|---|---|---|---|---|\n";
    char buf[64];
    for (const AggregateRow& r : report.rows) {
        out << "| " << r.group_key << " | " << r.session_count << " | ";
        std::snprintf(buf, sizeof(buf), "%.2f", r.avg_wpm);
        out << buf << " | " << r.total_chars_written << " | ";
        std::snprintf(buf, sizeof(buf), "%.4f", r.avg_total_er);
        out << buf << " | ";
        if (r.compliance) {
            std::snprintf(buf, sizeof(buf), "%.2f", *r.compliance);
            out << buf;
        } else {
            out << "-";
        }
        out << " |\n";
    }
    return out.str();
}

}  // namespace wildkey
