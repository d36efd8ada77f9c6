#include "vanet/config.hpp"

#include <charconv>
#include <cstdint>
#include <string>
#include <vector>

#include "vanet/errors.hpp"

namespace vanet::cli {

namespace {

using sim::ScenarioConfig;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad(std::size_t line, const std::string& what) {
    fail(Errc::config_error, "line " + std::to_string(line) + ": " + what);
}

template <typename T>
T parse_number(std::string_view v, std::size_t line, const std::string& key) {
    T out{};
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        bad(line, "key '" + key + "' needs a valid number, got '" + std::string(v) + "'");
    return out;
}

double parse_double(std::string_view v, std::size_t line, const std::string& key) {
    return parse_number<double>(v, line, key);
}

bool parse_bool(std::string_view v, std::size_t line, const std::string& key) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    bad(line, "key '" + key + "' needs true/false, got '" + std::string(v) + "'");
}

std::vector<std::string_view> split_list(std::string_view v) {
    std::vector<std::string_view> out;
    while (!v.empty()) {
        std::size_t comma = v.find(',');
        out.push_back(trim(v.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        v.remove_prefix(comma + 1);
    }
    return out;
}

struct Parser {
    ScenarioConfig config;
    std::string section;  // empty = global scope
    std::size_t line = 0;

    bool saw_move = false;
    bool saw_sweep = false;
    bool saw_delay_model = false;

    void begin_section(std::string_view name) {
        if (name == "region") {
            config.regions.emplace_back();
        } else if (name == "attacker") {
            config.attackers.emplace_back();
        } else if (name == "flagged") {
            // list lives in its single `vehicles` key
        } else if (name == "delay_model") {
            if (saw_delay_model) bad(line, "duplicate [delay_model] section");
            saw_delay_model = true;
        } else if (name == "move") {
            if (saw_move) bad(line, "duplicate [move] section");
            saw_move = true;
            config.cross_region_move.emplace();
        } else if (name == "sweep") {
            if (saw_sweep) bad(line, "duplicate [sweep] section");
            saw_sweep = true;
            config.sweep.emplace();
        } else {
            bad(line, "unknown section '" + std::string(name) + "'");
        }
        section = std::string(name);
    }

    void global_key(const std::string& key, std::string_view value) {
        if (key == "seed")
            config.seed = parse_number<std::uint64_t>(value, line, key);
        else if (key == "vehicles")
            config.vehicles = parse_number<std::uint32_t>(value, line, key);
        else if (key == "accident_messages")
            config.accident_messages = parse_number<std::uint32_t>(value, line, key);
        else if (key == "key_cache")
            config.key_cache = parse_bool(value, line, key);
        else if (key == "message_interval_us")
            config.message_interval_us = parse_number<std::int64_t>(value, line, key);
        else if (key == "placement") {
            if (value != "uniform")
                bad(line, "unsupported placement rule '" + std::string(value) + "'");
        } else
            bad(line, "unknown key '" + key + "'");
    }

    void region_key(const std::string& key, std::string_view value) {
        sim::RegionSpec& r = config.regions.back();
        if (key == "x0")
            r.x0 = parse_double(value, line, key);
        else if (key == "y0")
            r.y0 = parse_double(value, line, key);
        else if (key == "x1")
            r.x1 = parse_double(value, line, key);
        else if (key == "y1")
            r.y1 = parse_double(value, line, key);
        else if (key == "rsu") {
            auto parts = split_list(value);
            if (parts.size() != 2) bad(line, "rsu needs 'x,y'");
            r.rsus.emplace_back(parse_double(parts[0], line, key),
                                parse_double(parts[1], line, key));
        } else
            bad(line, "unknown key '" + key + "' in [region]");
    }

    void attacker_key(const std::string& key, std::string_view value) {
        sim::AttackerSpec& a = config.attackers.back();
        if (key == "vehicle")
            a.vehicle = parse_number<std::uint32_t>(value, line, key);
        else if (key == "spoofs") {
            for (std::string_view part : split_list(value))
                a.spoofs.push_back(parse_number<std::uint32_t>(part, line, key));
        } else
            bad(line, "unknown key '" + key + "' in [attacker]");
    }

    void flagged_key(const std::string& key, std::string_view value) {
        if (key != "vehicles") bad(line, "unknown key '" + key + "' in [flagged]");
        for (std::string_view part : split_list(value))
            config.flagged.push_back(parse_number<std::uint32_t>(part, line, key));
    }

    void delay_key(const std::string& key, std::string_view value) {
        sim::DelayModel& m = config.delay_model;
        if (key == "propagation_speed")
            m.propagation_speed = parse_double(value, line, key);
        else if (key == "per_byte_tx")
            m.per_byte_tx = parse_double(value, line, key);
        else if (key == "rsu_proc")
            m.rsu_proc = parse_double(value, line, key);
        else if (key == "ca_decrypt_proc")
            m.ca_decrypt_proc = parse_double(value, line, key);
        else if (key == "ca_verify_proc")
            m.ca_verify_proc = parse_double(value, line, key);
        else if (key == "escrow_rtt_base")
            m.escrow_rtt_base = parse_double(value, line, key);
        else
            bad(line, "unknown key '" + key + "' in [delay_model]");
    }

    void move_key(const std::string& key, std::string_view value) {
        sim::MoveSpec& m = *config.cross_region_move;
        if (key == "vehicle")
            m.vehicle = parse_number<std::uint32_t>(value, line, key);
        else if (key == "from_region")
            m.from_region = parse_number<std::uint32_t>(value, line, key);
        else if (key == "to_region")
            m.to_region = parse_number<std::uint32_t>(value, line, key);
        else if (key == "time_us")
            m.time_us = parse_number<std::int64_t>(value, line, key);
        else
            bad(line, "unknown key '" + key + "' in [move]");
    }

    void sweep_key(const std::string& key, std::string_view value) {
        sim::SweepSpec& s = *config.sweep;
        if (key == "axis") {
            if (value == "vehicles")
                s.axis = sim::SweepAxis::vehicles;
            else if (value == "messages")
                s.axis = sim::SweepAxis::messages;
            else if (value == "attackers")
                s.axis = sim::SweepAxis::attackers;
            else
                bad(line, "sweep axis must be vehicles, messages or attackers");
        } else if (key == "values") {
            for (std::string_view part : split_list(value))
                s.values.push_back(parse_number<std::uint64_t>(part, line, key));
        } else
            bad(line, "unknown key '" + key + "' in [sweep]");
    }

    void handle(const std::string& key, std::string_view value) {
        if (section.empty()) return global_key(key, value);
        if (section == "region") return region_key(key, value);
        if (section == "attacker") return attacker_key(key, value);
        if (section == "flagged") return flagged_key(key, value);
        if (section == "delay_model") return delay_key(key, value);
        if (section == "move") return move_key(key, value);
        if (section == "sweep") return sweep_key(key, value);
    }
};

void validate(const ScenarioConfig& c) {
    if (c.regions.empty()) fail(Errc::config_error, "at least one [region] is required");
    for (std::size_t i = 0; i < c.regions.size(); ++i) {
        const sim::RegionSpec& r = c.regions[i];
        if (!(r.x1 > r.x0 && r.y1 > r.y0))
            fail(Errc::config_error,
                 "region " + std::to_string(i) + " must have positive area");
        for (auto [x, y] : r.rsus)
            if (!(x >= r.x0 && x < r.x1 && y >= r.y0 && y < r.y1))
                fail(Errc::config_error, "rsu (" + std::to_string(x) + ", " +
                                             std::to_string(y) + ") lies outside region " +
                                             std::to_string(i));
    }
    if (c.vehicles == 0 && (c.accident_messages > 0 || !c.attackers.empty()))
        fail(Errc::config_error, "messages are configured but vehicles = 0");
    for (const sim::AttackerSpec& a : c.attackers) {
        if (a.vehicle >= c.vehicles)
            fail(Errc::config_error, "attacker vehicle " + std::to_string(a.vehicle) +
                                         " is not a declared vehicle (vehicles=" +
                                         std::to_string(c.vehicles) + ")");
        if (a.spoofs.empty())
            fail(Errc::config_error,
                 "attacker " + std::to_string(a.vehicle) + " declares no spoofed identities");
        for (std::uint32_t s : a.spoofs) {
            if (s >= c.vehicles)
                fail(Errc::config_error,
                     "attacker " + std::to_string(a.vehicle) + " spoofs undeclared vehicle " +
                         std::to_string(s));
            if (s == a.vehicle)
                fail(Errc::config_error,
                     "attacker " + std::to_string(a.vehicle) + " cannot spoof itself");
        }
    }
    for (std::uint32_t f : c.flagged)
        if (f >= c.vehicles)
            fail(Errc::config_error,
                 "flagged vehicle " + std::to_string(f) + " is not a declared vehicle");
    const sim::DelayModel& m = c.delay_model;
    if (m.propagation_speed <= 0)
        fail(Errc::config_error, "propagation_speed must be positive");
    for (double v :
         {m.per_byte_tx, m.rsu_proc, m.ca_decrypt_proc, m.ca_verify_proc, m.escrow_rtt_base})
        if (v < 0) fail(Errc::config_error, "delay model parameters must be non-negative");
    if (c.message_interval_us < 0)
        fail(Errc::config_error, "message_interval_us must be non-negative");
    if (c.cross_region_move) {
        const sim::MoveSpec& mv = *c.cross_region_move;
        if (mv.vehicle >= c.vehicles)
            fail(Errc::config_error,
                 "moved vehicle " + std::to_string(mv.vehicle) + " is not a declared vehicle");
        if (mv.from_region >= c.regions.size() || mv.to_region >= c.regions.size())
            fail(Errc::config_error, "[move] references an unknown region");
        if (mv.from_region == mv.to_region)
            fail(Errc::config_error, "[move] must change region");
        std::uint32_t initial =
            mv.vehicle % static_cast<std::uint32_t>(c.regions.size());
        if (initial != mv.from_region)
            fail(Errc::config_error, "vehicle " + std::to_string(mv.vehicle) +
                                         " starts in region " + std::to_string(initial) +
                                         ", not " + std::to_string(mv.from_region));
        if (mv.time_us < 0) fail(Errc::config_error, "move time_us must be non-negative");
    }
    if (c.sweep) {
        if (c.sweep->values.empty())
            fail(Errc::config_error, "[sweep] values must be non-empty");
        for (std::size_t i = 1; i < c.sweep->values.size(); ++i)
            if (c.sweep->values[i] <= c.sweep->values[i - 1])
                fail(Errc::config_error, "[sweep] values must be strictly ascending");
    }
}

}  // namespace

sim::ScenarioConfig parse_config(std::string_view text) {
    Parser p;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                              : eol - pos);
        p.line += 1;
        std::string_view stripped = raw.substr(0, raw.find('#'));
        std::string_view s = trim(stripped);
        if (!s.empty()) {
            if (s.front() == '[') {
                if (s.back() != ']')
                    bad(p.line, "column " + std::to_string(raw.find('[') + 1) +
                                    ": unterminated section header");
                p.begin_section(trim(s.substr(1, s.size() - 2)));
            } else {
                std::size_t eq = s.find('=');
                if (eq == std::string_view::npos)
                    bad(p.line,
                        "column " +
                            std::to_string(raw.find_first_not_of(" \t") + 1) +
                            ": expected 'key = value' or '[section]'");
                std::string key(trim(s.substr(0, eq)));
                std::string_view value = trim(s.substr(eq + 1));
                if (key.empty()) bad(p.line, "empty key");
                p.handle(key, value);
            }
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    validate(p.config);
    return p.config;
}

}  // namespace vanet::cli
