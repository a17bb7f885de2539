#pragma once
#include <cstdint>
#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wildkey/events.hpp"

namespace wildkey {

// Study plans: studies -> schedules -> timeframes -> tasks. Plans are
// immutable snapshots (edits produce new versions); evaluation is pure over
// (plan, token, now). All date-times are civil values in the study's fixed
// timezone.

struct Date {
    int year = 1970;
    unsigned month = 1;
    unsigned day = 1;

    auto operator<=>(const Date&) const = default;
};

struct TimeOfDay {
    int minutes = 0;  // minutes since midnight, [0, 1440)

    auto operator<=>(const TimeOfDay&) const = default;
};

struct DateTime {
    Date date;
    TimeOfDay time;

    auto operator<=>(const DateTime&) const = default;
};

Date shift_date(const Date& d, std::int64_t delta_days);
int weekday(const Date& d);  // 0 = Sunday
std::int64_t days_from_epoch(const Date& d);

std::string format_date(const Date& d);               // YYYY-MM-DD
std::string format_time(const TimeOfDay& t);          // HH:MM
std::string format_datetime(const DateTime& dt);      // YYYY-MM-DDTHH:MM
Date parse_date(const std::string& s);
TimeOfDay parse_time(const std::string& s);
DateTime parse_datetime(const std::string& s);

enum class TaskKind { transcription, composition, questionnaire, custom };
enum class QuestionKind {
    slider_scale,
    button_scale,
    multiple_choice,
    single_choice,
    time_of_day,
    open_ended,
};

const char* to_string(TaskKind kind);
const char* to_string(QuestionKind kind);

struct Question {
    std::string question_id;
    QuestionKind kind = QuestionKind::open_ended;
    std::string title;
    std::string description;
    // scale kinds
    int scale_min = 0;
    int scale_max = 0;
    std::string min_label;
    std::string max_label;
    // choice kinds
    std::vector<std::string> choices;

    bool operator==(const Question&) const = default;
};

struct QuestionnaireItem {
    std::string question_id;
    bool required = false;

    bool operator==(const QuestionnaireItem&) const = default;
};

struct TaskDef {
    std::string task_id;
    TaskKind kind = TaskKind::transcription;
    // transcription/composition payload
    std::vector<std::string> sentences;  // sentences or questions, in order
    bool randomize = false;
    std::optional<std::int64_t> timeout_s;
    // questionnaire payload
    std::vector<QuestionnaireItem> questions;
    // custom payload
    nlohmann::json parameters = nlohmann::json::object();

    bool operator==(const TaskDef&) const = default;
};

struct Timeframe {
    TimeOfDay start_time;
    TimeOfDay end_time;
    std::string notification_title;
    std::string notification_description;
    std::vector<std::string> task_ids;

    bool operator==(const Timeframe&) const = default;
};

struct ScheduledTimeframe {
    Date date;
    Timeframe timeframe;

    bool operator==(const ScheduledTimeframe&) const = default;
};

struct Schedule {
    std::string schedule_id;
    DateTime start;
    DateTime end;
    std::vector<ScheduledTimeframe> timeframes;

    bool operator==(const Schedule&) const = default;
};

struct StudyPlan {
    std::string study_id;
    std::string title;
    Date start_date;
    Date end_date;
    std::string timezone = "UTC";
    std::vector<TaskDef> tasks;
    std::vector<Question> questions;
    std::vector<Schedule> schedules;
    std::map<std::string, std::string> assignments;  // user token -> schedule id

    const TaskDef* find_task(const std::string& task_id) const;
    const Schedule* find_schedule(const std::string& schedule_id) const;

    bool operator==(const StudyPlan&) const = default;
};

struct PlanViolation {
    std::string entity;
    std::string rule;

    bool operator==(const PlanViolation&) const = default;
};

// Empty iff every structural invariant holds (window ordering, nonempty
// payloads, scale/choice arity, references to existing tasks, questions and
// schedules). Violations name the offending entity.
std::vector<PlanViolation> validate_plan(const StudyPlan& plan);

struct Notification {
    std::string title;
    std::string description;
    DateTime fire_at;  // timeframe start on its day

    bool operator==(const Notification&) const = default;
};

struct ActiveTasks {
    std::vector<TaskDef> tasks;
    std::vector<Notification> notifications;
};

// Tasks of every timeframe whose date matches `now` and whose
// [start_time, end_time] window (closed on both ends) contains its time, for
// the user's assigned schedule. Unassigned users get nothing.
ActiveTasks active_tasks(const StudyPlan& plan, const std::string& user_token,
                         const DateTime& now);

// Moves the schedule window and every timeframe date by delta_days; times of
// day and task lists are untouched.
Schedule shift_schedule(const Schedule& s, std::int64_t delta_days);

// Whole-plan shift: study window plus every schedule.
StudyPlan shift_plan(const StudyPlan& plan, std::int64_t delta_days);

// Presentation order of a transcription/composition task's sentences:
// identity unless randomize is set, then a seeded Fisher-Yates permutation,
// deterministic per (task_id, seed).
std::vector<std::string> order_phrases(const TaskDef& task, std::uint64_t seed);

enum class TimeoutDecision { present_next, stop };

// stop iff the sentence list is exhausted or a timeout is configured and
// strictly exceeded; the in-flight sentence is never truncated.
TimeoutDecision apply_timeout(const TaskDef& task, double elapsed_s, std::size_t next_index);

void to_json(nlohmann::json& j, const StudyPlan& v);
void from_json(const nlohmann::json& j, StudyPlan& v);
void to_json(nlohmann::json& j, const TaskDef& v);
void from_json(const nlohmann::json& j, TaskDef& v);
void to_json(nlohmann::json& j, const Question& v);
void from_json(const nlohmann::json& j, Question& v);
void to_json(nlohmann::json& j, const Schedule& v);
void from_json(const nlohmann::json& j, Schedule& v);
void to_json(nlohmann::json& j, const Notification& v);

StudyPlan load_plan(const std::string& path);

}  // namespace wildkey
