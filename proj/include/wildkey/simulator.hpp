#pragma once
#include <cstdint>
#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wildkey/events.hpp"

namespace wildkey {

// Seeded synthetic typist. Generates well-formed RawSessions from a target
// text together with a ground-truth ledger of every injected error, which
// the metric suite is verified against.

struct TypistProfile {
    double target_wpm = 40.0;
    double substitution_rate = 0.0;
    double insertion_rate = 0.0;
    double omission_rate = 0.0;
    double correction_probability = 0.0;
    double hold_mean_ms = 80.0;
    double hold_sd_ms = 20.0;
    double flight_mean_ms = 220.0;
    double flight_sd_ms = 60.0;
    double suggestion_use_rate = 0.0;

    bool operator==(const TypistProfile&) const = default;
};

void to_json(nlohmann::json& j, const TypistProfile& v);
void from_json(const nlohmann::json& j, TypistProfile& v);
TypistProfile load_profile(const std::string& path);

enum class InjectedKind { substitution, insertion, omission };

const char* to_string(InjectedKind kind);

struct InjectedError {
    InjectedKind kind = InjectedKind::substitution;
    std::int64_t position = 0;  // position in the target text
    bool corrected = false;

    bool operator==(const InjectedError&) const = default;
};

struct GroundTruthLedger {
    std::vector<InjectedError> injected;
    std::string true_intent;
    std::string expected_final;  // target with the uncorrected errors applied

    std::int64_t corrected_total() const;
    std::int64_t uncorrected_total() const;
    std::int64_t count(InjectedKind kind, bool corrected) const;

    bool operator==(const GroundTruthLedger&) const = default;
};

void to_json(nlohmann::json& j, const GroundTruthLedger& v);
void from_json(const nlohmann::json& j, GroundTruthLedger& v);

struct KeyGeometry {
    double centroid_x_px = 0.0;
    double centroid_y_px = 0.0;
    double width_px = 0.0;
    double height_px = 0.0;

    bool operator==(const KeyGeometry&) const = default;
};

// Key geometry for every typeable character plus the control keys.
struct KeyboardLayout {
    std::map<char32_t, KeyGeometry> characters;
    KeyGeometry backspace;
    KeyGeometry suggestion_bar;
    std::map<char32_t, std::vector<char32_t>> neighbors;  // physically adjacent keys

    bool covers(const std::string& text) const;
};

// Built-in QWERTY layout (letters, digits, common punctuation, space) on a
// 1080x1920 px screen.
const KeyboardLayout& qwerty_layout();

DeviceInfo default_device();

struct SimulatorOptions {
    std::optional<std::string> user_token;  // derived from the seed when absent
    std::int64_t start_ts_ms = 500;
    std::string language = "en-US";
};

struct SimulatedSession {
    RawSession session;
    GroundTruthLedger ledger;
};

// Deterministic per (target, profile, seed). Per character at most one error
// is injected by the profile rates; corrected errors are immediately
// backspaced and retyped. Injections are spaced and chosen so that the
// ledger is exactly recoverable from the session: no two injections within
// three characters, replacement characters never collide with nearby intent
// characters, and errors never target spaces or suggestion-committed words.
// Throws ConfigError when the layout lacks a target character.
SimulatedSession simulate(const std::string& target, const TypistProfile& profile,
                          std::uint64_t seed, const KeyboardLayout& layout = qwerty_layout(),
                          const SimulatorOptions& options = {});

// Session i uses seed base_seed + i and targets[i % targets.size()].
std::vector<SimulatedSession> batch(const std::vector<std::string>& targets,
                                    const TypistProfile& profile, std::uint64_t base_seed,
                                    int n, const KeyboardLayout& layout = qwerty_layout(),
                                    const SimulatorOptions& options = {});

}  // namespace wildkey
