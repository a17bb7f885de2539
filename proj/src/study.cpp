#include "wildkey/study.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wildkey/errors.hpp"
#include "wildkey/rng.hpp"

namespace wildkey {

namespace {

std::chrono::year_month_day to_ymd(const Date& d) {
    return std::chrono::year{d.year} / d.month / d.day;
}

Date from_days(std::chrono::sys_days sd) {
    std::chrono::year_month_day ymd{sd};
    return Date{static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day())};
}

}  // namespace

std::int64_t days_from_epoch(const Date& d) {
    return std::chrono::sys_days{to_ymd(d)}.time_since_epoch().count();
}

Date shift_date(const Date& d, std::int64_t delta_days) {
    return from_days(std::chrono::sys_days{to_ymd(d)} + std::chrono::days{delta_days});
}

int weekday(const Date& d) {
    return static_cast<int>(std::chrono::weekday{std::chrono::sys_days{to_ymd(d)}}.c_encoding());
}

std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", d.year, d.month, d.day);
    return buf;
}

std::string format_time(const TimeOfDay& t) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%02d:%02d", t.minutes / 60, t.minutes % 60);
    return buf;
}

std::string format_datetime(const DateTime& dt) {
    return format_date(dt.date) + "T" + format_time(dt.time);
}

Date parse_date(const std::string& s) {
    int y = 0;
    unsigned m = 0;
    unsigned d = 0;
    if (std::sscanf(s.c_str(), "%d-%u-%u", &y, &m, &d) != 3 || m < 1 || m > 12 || d < 1 ||
        d > 31) {
        throw ConfigError("bad date (want YYYY-MM-DD): " + s);
    }
    if (!to_ymd(Date{y, m, d}).ok()) throw ConfigError("bad calendar date: " + s);
    return Date{y, m, d};
}

TimeOfDay parse_time(const std::string& s) {
    int h = 0;
    int m = 0;
    if (std::sscanf(s.c_str(), "%d:%d", &h, &m) != 2 || h < 0 || h > 23 || m < 0 || m > 59) {
        throw ConfigError("bad time of day (want HH:MM): " + s);
    }
    return TimeOfDay{h * 60 + m};
}

DateTime parse_datetime(const std::string& s) {
    const std::size_t t = s.find('T');
    if (t == std::string::npos) throw ConfigError("bad date-time (want YYYY-MM-DDTHH:MM): " + s);
    return DateTime{parse_date(s.substr(0, t)), parse_time(s.substr(t + 1))};
}

const char* to_string(TaskKind kind) {
    switch (kind) {
        case TaskKind::transcription: return "transcription";
        case TaskKind::composition: return "composition";
        case TaskKind::questionnaire: return "questionnaire";
        case TaskKind::custom: return "custom";
    }
    return "custom";
}

const char* to_string(QuestionKind kind) {
    switch (kind) {
        case QuestionKind::slider_scale: return "slider_scale";
        case QuestionKind::button_scale: return "button_scale";
        case QuestionKind::multiple_choice: return "multiple_choice";
        case QuestionKind::single_choice: return "single_choice";
        case QuestionKind::time_of_day: return "time_of_day";
        case QuestionKind::open_ended: return "open_ended";
    }
    return "open_ended";
}

const TaskDef* StudyPlan::find_task(const std::string& task_id) const {
    for (const TaskDef& t : tasks) {
        if (t.task_id == task_id) return &t;
    }
    return nullptr;
}

const Schedule* StudyPlan::find_schedule(const std::string& schedule_id) const {
    for (const Schedule& s : schedules) {
        if (s.schedule_id == schedule_id) return &s;
    }
    return nullptr;
}

std::vector<PlanViolation> validate_plan(const StudyPlan& plan) {
    std::vector<PlanViolation> out;
    if (plan.end_date < plan.start_date) {
        out.push_back({"study " + plan.study_id, "start_date <= end_date"});
    }

    for (const Question& q : plan.questions) {
        const std::string entity = "question " + q.question_id;
        const bool scale =
            q.kind == QuestionKind::slider_scale || q.kind == QuestionKind::button_scale;
        const bool choice =
            q.kind == QuestionKind::multiple_choice || q.kind == QuestionKind::single_choice;
        if (scale && q.scale_min >= q.scale_max) {
            out.push_back({entity, "scale min < max"});
        }
        if (choice && q.choices.size() < 2) {
            out.push_back({entity, "choice questions need >= 2 options"});
        }
    }

    auto question_exists = [&](const std::string& id) {
        return std::any_of(plan.questions.begin(), plan.questions.end(),
                           [&](const Question& q) { return q.question_id == id; });
    };

    for (const TaskDef& t : plan.tasks) {
        const std::string entity = "task " + t.task_id;
        if (t.kind == TaskKind::transcription || t.kind == TaskKind::composition) {
            if (t.sentences.empty()) out.push_back({entity, "needs >= 1 sentence"});
            if (t.timeout_s && *t.timeout_s <= 0) out.push_back({entity, "timeout_s > 0"});
        }
        if (t.kind == TaskKind::questionnaire) {
            if (t.questions.empty()) out.push_back({entity, "needs >= 1 question"});
            for (const QuestionnaireItem& item : t.questions) {
                if (!question_exists(item.question_id)) {
                    out.push_back({entity, "unknown question id " + item.question_id});
                }
            }
        }
    }

    for (const Schedule& s : plan.schedules) {
        const std::string entity = "schedule " + s.schedule_id;
        if (s.end < s.start) out.push_back({entity, "start <= end"});
        for (const ScheduledTimeframe& stf : s.timeframes) {
            const std::string tf_entity =
                entity + " timeframe " + format_date(stf.date) + " " +
                format_time(stf.timeframe.start_time);
            if (stf.timeframe.end_time <= stf.timeframe.start_time) {
                out.push_back({tf_entity, "start_time < end_time"});
            }
            if (stf.timeframe.task_ids.empty()) {
                out.push_back({tf_entity, "needs >= 1 task"});
            }
            if (stf.date < s.start.date || s.end.date < stf.date) {
                out.push_back({tf_entity, "date within schedule window"});
            }
            for (const std::string& id : stf.timeframe.task_ids) {
                if (plan.find_task(id) == nullptr) {
                    out.push_back({tf_entity, "unknown task id " + id});
                }
            }
        }
    }

    for (const auto& [token, schedule_id] : plan.assignments) {
        if (plan.find_schedule(schedule_id) == nullptr) {
            out.push_back({"assignment " + token, "unknown schedule id " + schedule_id});
        }
    }
    return out;
}

ActiveTasks active_tasks(const StudyPlan& plan, const std::string& user_token,
                         const DateTime& now) {
    ActiveTasks out;
    auto it = plan.assignments.find(user_token);
    if (it == plan.assignments.end()) return out;
    const Schedule* schedule = plan.find_schedule(it->second);
    if (schedule == nullptr) return out;

    for (const ScheduledTimeframe& stf : schedule->timeframes) {
        if (stf.date != now.date) continue;
        // availability window is closed on both ends
        if (now.time < stf.timeframe.start_time || stf.timeframe.end_time < now.time) continue;
        out.notifications.push_back(Notification{stf.timeframe.notification_title,
                                                 stf.timeframe.notification_description,
                                                 DateTime{stf.date, stf.timeframe.start_time}});
        for (const std::string& id : stf.timeframe.task_ids) {
            const TaskDef* task = plan.find_task(id);
            if (task != nullptr) out.tasks.push_back(*task);
        }
    }
    return out;
}

Schedule shift_schedule(const Schedule& s, std::int64_t delta_days) {
    Schedule out = s;
    out.start.date = shift_date(s.start.date, delta_days);
    out.end.date = shift_date(s.end.date, delta_days);
    for (ScheduledTimeframe& stf : out.timeframes) stf.date = shift_date(stf.date, delta_days);
    return out;
}

StudyPlan shift_plan(const StudyPlan& plan, std::int64_t delta_days) {
    StudyPlan out = plan;
    out.start_date = shift_date(plan.start_date, delta_days);
    out.end_date = shift_date(plan.end_date, delta_days);
    for (Schedule& s : out.schedules) s = shift_schedule(s, delta_days);
    return out;
}

std::vector<std::string> order_phrases(const TaskDef& task, std::uint64_t seed) {
    std::vector<std::string> out = task.sentences;
    if (!task.randomize) return out;
    Rng rng(hash64(task.task_id) ^ (seed * 0x9E3779B97F4A7C15ULL + 1));
    for (std::size_t i = out.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(out[i - 1], out[j]);
    }
    return out;
}

TimeoutDecision apply_timeout(const TaskDef& task, double elapsed_s, std::size_t next_index) {
    if (next_index >= task.sentences.size()) return TimeoutDecision::stop;
    if (task.timeout_s && elapsed_s > static_cast<double>(*task.timeout_s)) {
        return TimeoutDecision::stop;
    }
    return TimeoutDecision::present_next;
}

// ---- JSON bindings ----

namespace {

TaskKind task_kind_from_string(const std::string& s) {
    if (s == "transcription") return TaskKind::transcription;
    if (s == "composition") return TaskKind::composition;
    if (s == "questionnaire") return TaskKind::questionnaire;
    if (s == "custom") return TaskKind::custom;
    throw ConfigError("bad task kind: " + s);
}

QuestionKind question_kind_from_string(const std::string& s) {
    if (s == "slider_scale") return QuestionKind::slider_scale;
    if (s == "button_scale") return QuestionKind::button_scale;
    if (s == "multiple_choice") return QuestionKind::multiple_choice;
    if (s == "single_choice") return QuestionKind::single_choice;
    if (s == "time_of_day") return QuestionKind::time_of_day;
    if (s == "open_ended") return QuestionKind::open_ended;
    throw ConfigError("bad question kind: " + s);
}

}  // namespace

void to_json(nlohmann::json& j, const Question& v) {
    j = {{"question_id", v.question_id},
         {"kind", to_string(v.kind)},
         {"title", v.title},
         {"description", v.description}};
    if (v.kind == QuestionKind::slider_scale || v.kind == QuestionKind::button_scale) {
        j["scale_min"] = v.scale_min;
        j["scale_max"] = v.scale_max;
        j["min_label"] = v.min_label;
        j["max_label"] = v.max_label;
    }
    if (v.kind == QuestionKind::multiple_choice || v.kind == QuestionKind::single_choice) {
        j["choices"] = v.choices;
    }
}

void from_json(const nlohmann::json& j, Question& v) {
    v = Question{};
    j.at("question_id").get_to(v.question_id);
    v.kind = question_kind_from_string(j.at("kind").get<std::string>());
    j.at("title").get_to(v.title);
    j.at("description").get_to(v.description);
    if (j.contains("scale_min")) j.at("scale_min").get_to(v.scale_min);
    if (j.contains("scale_max")) j.at("scale_max").get_to(v.scale_max);
    if (j.contains("min_label")) j.at("min_label").get_to(v.min_label);
    if (j.contains("max_label")) j.at("max_label").get_to(v.max_label);
    if (j.contains("choices")) j.at("choices").get_to(v.choices);
}

void to_json(nlohmann::json& j, const TaskDef& v) {
    j = {{"task_id", v.task_id}, {"kind", to_string(v.kind)}};
    if (v.kind == TaskKind::transcription || v.kind == TaskKind::composition) {
        j["sentences"] = v.sentences;
        j["randomize"] = v.randomize;
        if (v.timeout_s) j["timeout_s"] = *v.timeout_s;
    }
    if (v.kind == TaskKind::questionnaire) {
        nlohmann::json items = nlohmann::json::array();
        for (const QuestionnaireItem& item : v.questions) {
            items.push_back({{"question_id", item.question_id}, {"required", item.required}});
        }
        j["questions"] = items;
    }
    if (v.kind == TaskKind::custom) j["parameters"] = v.parameters;
}

void from_json(const nlohmann::json& j, TaskDef& v) {
    v = TaskDef{};
    j.at("task_id").get_to(v.task_id);
    v.kind = task_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("sentences")) j.at("sentences").get_to(v.sentences);
    if (j.contains("randomize")) j.at("randomize").get_to(v.randomize);
    if (j.contains("timeout_s")) v.timeout_s = j.at("timeout_s").get<std::int64_t>();
    if (j.contains("questions")) {
        for (const auto& item : j.at("questions")) {
            v.questions.push_back(QuestionnaireItem{item.at("question_id").get<std::string>(),
                                                    item.at("required").get<bool>()});
        }
    }
    if (j.contains("parameters")) v.parameters = j.at("parameters");
}

void to_json(nlohmann::json& j, const Schedule& v) {
    nlohmann::json frames = nlohmann::json::array();
    for (const ScheduledTimeframe& stf : v.timeframes) {
        frames.push_back({{"date", format_date(stf.date)},
                          {"start_time", format_time(stf.timeframe.start_time)},
                          {"end_time", format_time(stf.timeframe.end_time)},
                          {"notification_title", stf.timeframe.notification_title},
                          {"notification_description", stf.timeframe.notification_description},
                          {"task_ids", stf.timeframe.task_ids}});
    }
    j = {{"schedule_id", v.schedule_id},
         {"start", format_datetime(v.start)},
         {"end", format_datetime(v.end)},
         {"timeframes", frames}};
}

void from_json(const nlohmann::json& j, Schedule& v) {
    v = Schedule{};
    j.at("schedule_id").get_to(v.schedule_id);
    v.start = parse_datetime(j.at("start").get<std::string>());
    v.end = parse_datetime(j.at("end").get<std::string>());
    for (const auto& frame : j.at("timeframes")) {
        ScheduledTimeframe stf;
        stf.date = parse_date(frame.at("date").get<std::string>());
        stf.timeframe.start_time = parse_time(frame.at("start_time").get<std::string>());
        stf.timeframe.end_time = parse_time(frame.at("end_time").get<std::string>());
        frame.at("notification_title").get_to(stf.timeframe.notification_title);
        frame.at("notification_description").get_to(stf.timeframe.notification_description);
        frame.at("task_ids").get_to(stf.timeframe.task_ids);
        v.timeframes.push_back(std::move(stf));
    }
}

void to_json(nlohmann::json& j, const StudyPlan& v) {
    j = {{"study_id", v.study_id},
         {"title", v.title},
         {"start_date", format_date(v.start_date)},
         {"end_date", format_date(v.end_date)},
         {"timezone", v.timezone},
         {"tasks", v.tasks},
         {"questions", v.questions},
         {"schedules", v.schedules},
         {"assignments", v.assignments}};
}

void from_json(const nlohmann::json& j, StudyPlan& v) {
    v = StudyPlan{};
    j.at("study_id").get_to(v.study_id);
    j.at("title").get_to(v.title);
    v.start_date = parse_date(j.at("start_date").get<std::string>());
    v.end_date = parse_date(j.at("end_date").get<std::string>());
    if (j.contains("timezone")) j.at("timezone").get_to(v.timezone);
    if (j.contains("tasks")) j.at("tasks").get_to(v.tasks);
    if (j.contains("questions")) j.at("questions").get_to(v.questions);
    if (j.contains("schedules")) j.at("schedules").get_to(v.schedules);
    if (j.contains("assignments")) j.at("assignments").get_to(v.assignments);
}

void to_json(nlohmann::json& j, const Notification& v) {
    j = {{"title", v.title},
         {"description", v.description},
         {"fire_at", format_datetime(v.fire_at)}};
}

StudyPlan load_plan(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open study plan: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("study plan " + path + ": " + e.what());
    }
    return j.get<StudyPlan>();
}

}  // namespace wildkey
