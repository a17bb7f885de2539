#include "wildkey/simulator.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "wildkey/errors.hpp"
#include "wildkey/ids.hpp"
#include "wildkey/text.hpp"

namespace wildkey {

const char* to_string(InjectedKind kind) {
    switch (kind) {
        case InjectedKind::substitution: return "substitution";
        case InjectedKind::insertion: return "insertion";
        case InjectedKind::omission: return "omission";
    }
    return "substitution";
}

std::int64_t GroundTruthLedger::corrected_total() const {
    return static_cast<std::int64_t>(
        std::count_if(injected.begin(), injected.end(),
                      [](const InjectedError& e) { return e.corrected; }));
}

std::int64_t GroundTruthLedger::uncorrected_total() const {
    return static_cast<std::int64_t>(injected.size()) - corrected_total();
}

std::int64_t GroundTruthLedger::count(InjectedKind kind, bool corrected) const {
    return static_cast<std::int64_t>(
        std::count_if(injected.begin(), injected.end(), [&](const InjectedError& e) {
            return e.kind == kind && e.corrected == corrected;
        }));
}

void to_json(nlohmann::json& j, const TypistProfile& v) {
    j = {{"target_wpm", v.target_wpm},
         {"substitution_rate", v.substitution_rate},
         {"insertion_rate", v.insertion_rate},
         {"omission_rate", v.omission_rate},
         {"correction_probability", v.correction_probability},
         {"hold_mean_ms", v.hold_mean_ms},
         {"hold_sd_ms", v.hold_sd_ms},
         {"flight_mean_ms", v.flight_mean_ms},
         {"flight_sd_ms", v.flight_sd_ms},
         {"suggestion_use_rate", v.suggestion_use_rate}};
}

void from_json(const nlohmann::json& j, TypistProfile& v) {
    v = TypistProfile{};
    if (j.contains("target_wpm")) j.at("target_wpm").get_to(v.target_wpm);
    j.at("substitution_rate").get_to(v.substitution_rate);
    j.at("insertion_rate").get_to(v.insertion_rate);
    j.at("omission_rate").get_to(v.omission_rate);
    j.at("correction_probability").get_to(v.correction_probability);
    j.at("hold_mean_ms").get_to(v.hold_mean_ms);
    j.at("hold_sd_ms").get_to(v.hold_sd_ms);
    j.at("flight_mean_ms").get_to(v.flight_mean_ms);
    j.at("flight_sd_ms").get_to(v.flight_sd_ms);
    j.at("suggestion_use_rate").get_to(v.suggestion_use_rate);
    if (v.substitution_rate + v.insertion_rate + v.omission_rate >= 1.0) {
        throw ConfigError("profile: substitution + insertion + omission rates must be < 1");
    }
}

TypistProfile load_profile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open profile: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("profile " + path + ": " + e.what());
    }
    return j.get<TypistProfile>();
}

void to_json(nlohmann::json& j, const GroundTruthLedger& v) {
    nlohmann::json errors = nlohmann::json::array();
    for (const InjectedError& e : v.injected) {
        errors.push_back({{"kind", to_string(e.kind)},
                          {"position", e.position},
                          {"corrected", e.corrected}});
    }
    j = {{"injected", errors},
         {"true_intent", v.true_intent},
         {"expected_final", v.expected_final}};
}

void from_json(const nlohmann::json& j, GroundTruthLedger& v) {
    v = GroundTruthLedger{};
    for (const auto& e : j.at("injected")) {
        InjectedError err;
        const std::string kind = e.at("kind").get<std::string>();
        if (kind == "substitution") {
            err.kind = InjectedKind::substitution;
        } else if (kind == "insertion") {
            err.kind = InjectedKind::insertion;
        } else if (kind == "omission") {
            err.kind = InjectedKind::omission;
        } else {
            throw ConfigError("ledger: bad injected kind: " + kind);
        }
        e.at("position").get_to(err.position);
        e.at("corrected").get_to(err.corrected);
        v.injected.push_back(err);
    }
    j.at("true_intent").get_to(v.true_intent);
    j.at("expected_final").get_to(v.expected_final);
}

bool KeyboardLayout::covers(const std::string& text) const {
    for (char32_t cp : decode_utf8(text)) {
        if (characters.find(to_lower(cp)) == characters.end()) return false;
    }
    return true;
}

namespace {

KeyboardLayout build_qwerty() {
    KeyboardLayout layout;
    const double pitch = 105.0;
    const double key_w = 100.0;
    const double key_h = 140.0;
    auto place_row = [&](const std::string& row, double x0, double cy) {
        double cx = x0;
        for (char ch : row) {
            layout.characters[static_cast<char32_t>(ch)] = {cx, cy, key_w, key_h};
            cx += pitch;
        }
    };
    place_row("1234567890", 65.0, 560.0);
    place_row("qwertyuiop", 65.0, 710.0);
    place_row("asdfghjkl", 120.0, 860.0);
    place_row("zxcvbnm", 225.0, 1010.0);
    place_row(".,!?'-", 225.0, 1160.0);
    layout.characters[U' '] = {540.0, 1310.0, 520.0, key_h};
    layout.backspace = {1010.0, 1010.0, key_w, key_h};
    layout.suggestion_bar = {540.0, 420.0, 360.0, 90.0};

    // physically adjacent keys (same row or neighbouring rows within a pitch),
    // space excluded so substitutions never split words
    for (const auto& [a, ga] : layout.characters) {
        if (a == U' ') continue;
        for (const auto& [b, gb] : layout.characters) {
            if (a == b || b == U' ') continue;
            if (std::abs(ga.centroid_x_px - gb.centroid_x_px) <= pitch + 5.0 &&
                std::abs(ga.centroid_y_px - gb.centroid_y_px) <= 155.0) {
                layout.neighbors[a].push_back(b);
            }
        }
    }
    return layout;
}

}  // namespace

const KeyboardLayout& qwerty_layout() {
    static const KeyboardLayout layout = build_qwerty();
    return layout;
}

DeviceInfo default_device() {
    DeviceInfo device;
    device.os_version = "13";
    device.brand = "acme";
    device.model = "sim-1";
    device.screen_width_px = 1080;
    device.screen_height_px = 1920;
    device.density_px_per_cm = 160.0;
    return device;
}

namespace {

// Plain distance-only DP used as a generation-time consistency check.
std::size_t plain_distance(const std::vector<char32_t>& a, const std::vector<char32_t>& b) {
    std::vector<std::size_t> prev(b.size() + 1);
    std::vector<std::size_t> cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

class SessionBuilder {
  public:
    SessionBuilder(const KeyboardLayout& layout, Rng& rng, std::int64_t start_ts,
                   const TypistProfile& profile)
        : layout_(layout), rng_(rng), profile_(profile), now_(start_ts) {}

    void press_char(char32_t cp) {
        const auto it = layout_.characters.find(to_lower(cp));
        press(cp == U' ' ? Key::space() : Key::character_key(cp), it->second);
    }

    void press_backspace() { press(Key::backspace(), layout_.backspace); }

    void emit_snapshot(const std::vector<std::string>& words) {
        // snapshot lands just before the tap that uses it
        snapshots_.push_back({now_ + 1, words});
    }

    void press_suggestion(int index) {
        press(Key::suggestion(index), layout_.suggestion_bar);
    }

    RawSession finish(const std::string& session_id, const std::string& token,
                      const std::string& language) {
        RawSession s;
        s.session_id = session_id;
        s.user_token = token;
        s.device = default_device();
        s.field = FieldContext{FieldKind::normal, 0};
        s.keyboard_shown_ts_ms = 0;
        s.keyboard_language_events = {{0, language}};
        s.key_events = std::move(events_);
        s.suggestions = std::move(snapshots_);
        s.keyboard_hidden_ts_ms = now_ + 500;
        return s;
    }

  private:
    void press(const Key& key, const KeyGeometry& geom) {
        KeyEvent ev;
        ev.key = key;
        if (!events_.empty()) {
            now_ += std::llround(
                rng_.next_truncated_normal(profile_.flight_mean_ms, profile_.flight_sd_ms, 1.0));
        }
        ev.down_ts_ms = now_;
        const std::int64_t hold = std::llround(
            rng_.next_truncated_normal(profile_.hold_mean_ms, profile_.hold_sd_ms, 1.0));
        ev.up_ts_ms = now_ + hold;
        ev.key_centroid_x_px = geom.centroid_x_px;
        ev.key_centroid_y_px = geom.centroid_y_px;
        ev.key_width_px = geom.width_px;
        ev.key_height_px = geom.height_px;

        // touch point inside the key rectangle, biased toward the centre
        const double dx = rng_.next_double(-0.35, 0.35) * geom.width_px;
        const double dy = rng_.next_double(-0.35, 0.35) * geom.height_px;
        const double major = rng_.next_double(30.0, 60.0);
        const double minor = rng_.next_double(20.0, major);
        TouchSample down{geom.centroid_x_px + dx, geom.centroid_y_px + dy, major, minor,
                         MotionKind::down, ev.down_ts_ms};
        TouchSample up = down;
        up.motion_kind = MotionKind::up;
        up.timestamp_ms = ev.up_ts_ms;
        ev.touch_trace = {down, up};

        now_ = ev.up_ts_ms;
        events_.push_back(std::move(ev));
    }

    const KeyboardLayout& layout_;
    Rng& rng_;
    const TypistProfile& profile_;
    std::int64_t now_;
    std::vector<KeyEvent> events_;
    std::vector<SuggestionSnapshot> snapshots_;
};

}  // namespace

SimulatedSession simulate(const std::string& target, const TypistProfile& profile,
                          std::uint64_t seed, const KeyboardLayout& layout,
                          const SimulatorOptions& options) {
    if (target.empty()) throw ConfigError("simulate: target must be nonempty");
    if (!layout.covers(target)) {
        throw ConfigError("simulate: layout does not cover target characters");
    }
    if (profile.substitution_rate + profile.insertion_rate + profile.omission_rate >= 1.0) {
        throw ConfigError("simulate: error rates must sum to < 1");
    }

    Rng rng(seed * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL);
    const std::string session_id = new_session_id(rng);
    const std::string token = options.user_token ? *options.user_token : new_token(rng);

    const std::vector<char32_t> cps = decode_utf8(target);
    const std::int64_t n = static_cast<std::int64_t>(cps.size());

    SessionBuilder builder(layout, rng, options.start_ts_ms, profile);
    GroundTruthLedger ledger;
    ledger.true_intent = target;
    std::vector<char32_t> expected;  // the final text implied by the ledger

    // A wrong character must not collide with intent characters near the
    // injection point (so the alignment cannot reinterpret the error) nor
    // with the intent character at the erased live position (so corrected
    // errors always classify as erroneous).
    auto pick_wrong = [&](char32_t intended, std::int64_t pos) -> std::optional<char32_t> {
        auto clashes = [&](char32_t w) {
            for (std::int64_t j = pos - 2; j <= pos + 2; ++j) {
                if (j >= 0 && j < n && cps[j] == w) return true;
            }
            const std::int64_t live = static_cast<std::int64_t>(expected.size());
            if (live < n && cps[live] == w) return true;
            return w == intended;
        };
        const auto it = layout.neighbors.find(to_lower(intended));
        if (it != layout.neighbors.end()) {
            std::vector<char32_t> pool = it->second;
            while (!pool.empty()) {
                const std::size_t k = static_cast<std::size_t>(rng.next_below(pool.size()));
                const char32_t w = pool[k];
                pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
                if (!clashes(w)) return w;
            }
        }
        for (char32_t w = U'a'; w <= U'z'; ++w) {
            if (!clashes(w)) return w;
        }
        return std::nullopt;
    };

    std::int64_t last_inject_pos = -100;
    std::int64_t i = 0;
    while (i < n) {
        const char32_t c = cps[i];

        // Suggestion flow: commit a whole word from the suggestion bar after
        // typing its first half. Only for words followed by a space and only
        // while the live text matches the intent prefix, so erased partial
        // characters always classify as correct.
        const bool word_start = i == 0 || cps[i - 1] == U' ';
        if (word_start && c != U' ' && profile.suggestion_use_rate > 0.0 &&
            static_cast<std::int64_t>(expected.size()) == i) {
            std::int64_t word_end = i;
            while (word_end < n && cps[word_end] != U' ') ++word_end;
            const std::int64_t word_len = word_end - i;
            if (word_len >= 4 && word_end < n &&
                rng.next_bernoulli(profile.suggestion_use_rate)) {
                const std::string word =
                    encode_utf8(std::vector<char32_t>(cps.begin() + i, cps.begin() + word_end));
                const std::int64_t prefix = (word_len + 1) / 2;
                for (std::int64_t j = i; j < i + prefix; ++j) builder.press_char(cps[j]);
                builder.emit_snapshot({word});
                builder.press_suggestion(0);
                for (std::int64_t j = i; j < word_end; ++j) expected.push_back(cps[j]);
                expected.push_back(U' ');
                i = word_end + 1;
                continue;
            }
        }

        InjectedKind kind{};
        bool inject = false;
        if (c != U' ' && i >= last_inject_pos + 3) {
            const double u = rng.next_double();
            if (u < profile.substitution_rate) {
                kind = InjectedKind::substitution;
                inject = true;
            } else if (u < profile.substitution_rate + profile.insertion_rate) {
                kind = InjectedKind::insertion;
                inject = true;
            } else if (u < profile.substitution_rate + profile.insertion_rate +
                               profile.omission_rate) {
                kind = InjectedKind::omission;
                inject = true;
            }
        }

        if (inject && kind == InjectedKind::omission) {
            // The corrected flow erases the prematurely typed next character,
            // so one must exist and differ from the omitted one.
            if (i + 1 >= n || cps[i + 1] == c) inject = false;
            if (inject) {
                const std::int64_t live = static_cast<std::int64_t>(expected.size());
                if (live < n && cps[live] == cps[i + 1]) inject = false;
            }
        }

        if (!inject) {
            builder.press_char(c);
            expected.push_back(c);
            ++i;
            continue;
        }

        const bool corrected = rng.next_bernoulli(profile.correction_probability);
        switch (kind) {
            case InjectedKind::substitution: {
                const std::optional<char32_t> wrong = pick_wrong(c, i);
                if (!wrong) {
                    builder.press_char(c);
                    expected.push_back(c);
                    ++i;
                    continue;
                }
                builder.press_char(*wrong);
                if (corrected) {
                    builder.press_backspace();
                    builder.press_char(c);
                    expected.push_back(c);
                } else {
                    expected.push_back(*wrong);
                }
                ledger.injected.push_back({InjectedKind::substitution, i, corrected});
                last_inject_pos = i;
                ++i;
                break;
            }
            case InjectedKind::insertion: {
                const std::optional<char32_t> extra = pick_wrong(c, i);
                if (!extra) {
                    builder.press_char(c);
                    expected.push_back(c);
                    ++i;
                    continue;
                }
                builder.press_char(*extra);
                if (corrected) {
                    builder.press_backspace();
                } else {
                    expected.push_back(*extra);
                }
                builder.press_char(c);
                expected.push_back(c);
                ledger.injected.push_back({InjectedKind::insertion, i, corrected});
                last_inject_pos = i;
                ++i;
                break;
            }
            case InjectedKind::omission: {
                if (corrected) {
                    // noticed right after typing the next character
                    builder.press_char(cps[i + 1]);
                    builder.press_backspace();
                    builder.press_char(c);
                    builder.press_char(cps[i + 1]);
                    expected.push_back(c);
                    expected.push_back(cps[i + 1]);
                    ledger.injected.push_back({InjectedKind::omission, i, true});
                    last_inject_pos = i + 1;
                    i += 2;
                } else {
                    ledger.injected.push_back({InjectedKind::omission, i, false});
                    last_inject_pos = i;
                    ++i;
                }
                break;
            }
        }
    }

    ledger.expected_final = encode_utf8(expected);

    // generation-time consistency: the uncorrected injections must be exactly
    // the edit distance between the final text and the intent
    if (plain_distance(expected, cps) !=
        static_cast<std::size_t>(ledger.uncorrected_total())) {
        throw std::logic_error("simulator: ledger inconsistent with generated session");
    }

    SimulatedSession out;
    out.ledger = std::move(ledger);
    out.session = builder.finish(session_id, token, options.language);
    return out;
}

std::vector<SimulatedSession> batch(const std::vector<std::string>& targets,
                                    const TypistProfile& profile, std::uint64_t base_seed,
                                    int n, const KeyboardLayout& layout,
                                    const SimulatorOptions& options) {
    if (n < 1) throw ConfigError("batch: n must be >= 1");
    if (targets.empty()) throw ConfigError("batch: no targets");
    std::vector<SimulatedSession> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out.push_back(simulate(targets[static_cast<std::size_t>(i) % targets.size()], profile,
                               base_seed + static_cast<std::uint64_t>(i), layout, options));
    }
    return out;
}

}  // namespace wildkey
