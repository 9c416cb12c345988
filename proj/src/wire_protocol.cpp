#include "iftt/wire_protocol.hpp"

#include <exception>

namespace iftt {

using nlohmann::json;

namespace {

std::string error_line(const char* code, const std::string& message)
{
    return json{{"type", "error"}, {"code", code}, {"message", message}}.dump();
}

std::string coloring_line(const Coloring& c)
{
    return json{{"type", "coloring"}, {"colors", c.to_string()}}.dump();
}

std::string digits_string(const std::vector<Digit>& digits)
{
    std::string s;
    for (Digit d : digits)
        s.push_back(static_cast<char>('0' + d.value()));
    return s;
}

} // namespace

json snapshot_to_json(const SessionSnapshot& v)
{
    json consistent = json::array();
    json dots = json::array();
    json conflicts = json::array();
    for (std::size_t d = 0; d < kDigitCount; ++d) {
        consistent.push_back(v.consistent[d]);
        json row = json::array();
        for (const Dot& dot : v.dots[d])
            row.push_back({{"button", dot.button.index}, {"color", std::string(1, to_char(dot.color))}});
        dots.push_back(std::move(row));
        json marks = json::array();
        for (ButtonId b : v.conflicts[d])
            marks.push_back(b.index);
        conflicts.push_back(std::move(marks));
    }

    json out;
    out["phase"] = to_string(v.phase);
    out["failure"] = to_string(v.failure);
    out["buttons"] = v.n_buttons;
    out["pinLength"] = v.pin_length;
    out["coloring"] = v.coloring.to_string();
    out["consistent"] = std::move(consistent);
    out["dots"] = std::move(dots);
    out["conflicts"] = std::move(conflicts);
    out["buttonColors"] = ButtonMapping(v.button_colors).to_string();
    out["digitsEntered"] = v.digits_entered;
    out["digits"] = v.digits ? json(digits_string(*v.digits)) : json(nullptr);
    return out;
}

SessionConfig session_config_from_json(const json& config, std::uint64_t default_seed)
{
    SessionConfig c;
    c.planner.rng_seed = default_seed;
    if (config.is_null())
        return c;
    if (!config.is_object())
        throw ConfigurationError("config must be an object");

    auto get_int = [&](const char* key, int& dst) {
        if (auto it = config.find(key); it != config.end()) {
            if (!it->is_number_integer() || it->get<long long>() < -1000000 || it->get<long long>() > 1000000)
                throw ConfigurationError(std::string(key) + " must be an integer");
            dst = it->get<int>();
        }
    };
    auto get_bool = [&](const char* key, bool& dst) {
        if (auto it = config.find(key); it != config.end()) {
            if (!it->is_boolean())
                throw ConfigurationError(std::string(key) + " must be a boolean");
            dst = it->get<bool>();
        }
    };

    get_int("buttons", c.n_buttons);
    get_int("pinLength", c.pin_length);
    get_bool("revealLearnedColors", c.reveal_learned_colors);
    get_bool("revealDigits", c.reveal_digits);
    if (c.n_buttons > 64)
        throw ConfigurationError("at most 64 buttons are supported over the wire");
    if (c.pin_length > 64)
        throw ConfigurationError("PIN length is limited to 64 over the wire");
    if (auto it = config.find("strategy"); it != config.end()) {
        if (!it->is_string())
            throw ConfigurationError("strategy must be a string");
        c.planner.strategy = parse_planner_strategy(it->get<std::string>());
    }
    if (auto it = config.find("seed"); it != config.end()) {
        if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<long long>() >= 0))
            throw ConfigurationError("seed must be a non-negative integer");
        c.planner.rng_seed = it->get<std::uint64_t>();
    }
    if (auto it = config.find("knownMapping"); it != config.end() && !it->is_null()) {
        if (!it->is_string())
            throw ConfigurationError("knownMapping must be a string of Y, G and '.'");
        auto m = ButtonMapping::parse(it->get<std::string>());
        if (!m)
            throw ConfigurationError("knownMapping must be a string of Y, G and '.'");
        c.known_mapping = *m;
    }
    c.validate();
    return c;
}

// ----------------------------------------------------------------------------

ProtocolSession::ProtocolSession(std::uint64_t default_seed, TranscriptSink sink)
  : default_seed_(default_seed), seed_(default_seed), sink_(std::move(sink))
{
}

ProtocolSession::~ProtocolSession()
{
    try {
        close();
    } catch (...) {
    }
}

void ProtocolSession::close() { record(); }

void ProtocolSession::record()
{
    if (session_ && !recorded_ && sink_) {
        recorded_ = true;
        sink_(session_->transcript());
    }
}

std::vector<std::string> ProtocolSession::state_message() const
{
    json msg{{"type", "state"}, {"seed", seed_}};
    msg["snapshot"] = session_ ? snapshot_to_json(snapshot(*session_)) : json(nullptr);
    return {msg.dump()};
}

std::vector<std::string> ProtocolSession::handle_line(std::string_view line)
{
    json msg;
    try {
        msg = json::parse(line.begin(), line.end());
    } catch (const json::parse_error& e) {
        return {error_line(wire_error::kParse, e.what())};
    }
    if (!msg.is_object() || !msg.contains("type") || !msg["type"].is_string())
        return {error_line(wire_error::kBadMessage, "message must be an object with a string \"type\"")};

    const std::string type = msg["type"].get<std::string>();
    try {
        if (type == "start")
            return on_start(msg);
        if (type == "press")
            return on_press(msg);
        if (type == "snapshot")
            return state_message();
        return {error_line(wire_error::kBadMessage, "unknown message type \"" + type + "\"")};
    } catch (const std::exception& e) {
        return {error_line(wire_error::kInternal, e.what())};
    }
}

std::vector<std::string> ProtocolSession::on_start(const json& msg)
{
    SessionConfig config;
    try {
        config = session_config_from_json(msg.contains("config") ? msg["config"] : json(nullptr), default_seed_);
    } catch (const ConfigurationError& e) {
        return {error_line(wire_error::kBadConfig, e.what())};
    }
    record();
    session_ = start_session(config);
    recorded_ = false;
    seed_ = config.planner.rng_seed;

    auto out = state_message();
    out.push_back(coloring_line(session_->current_coloring()));
    return out;
}

std::vector<std::string> ProtocolSession::on_press(const json& msg)
{
    if (!session_)
        return {error_line(wire_error::kNotStarted, "send a start message first")};
    if (!msg.contains("button") || !msg["button"].is_number_integer())
        return {error_line(wire_error::kBadMessage, "press needs an integer \"button\"")};
    if (session_->phase() != SessionPhase::AwaitingPress)
        return {error_line(wire_error::kWrongPhase, "session is " + to_string(session_->phase()))};

    const long long b = msg["button"].get<long long>();
    if (b < 0 || b >= session_->config().n_buttons)
        return {error_line(wire_error::kBadButton, "button " + std::to_string(b) + " out of range for " +
                                                       std::to_string(session_->config().n_buttons) + " buttons")};

    session_ = submit_press(*session_, ButtonId{static_cast<int>(b)});
    std::vector<std::string> out;
    const bool reveal = session_->config().reveal_digits;

    switch (session_->phase()) {
    case SessionPhase::AwaitingPress:
        out.push_back(coloring_line(session_->current_coloring()));
        break;
    case SessionPhase::DigitIdentified:
    case SessionPhase::Complete: {
        const auto& digits = session_->entered_digits();
        out.push_back(json{{"type", "digit_identified"},
                           {"position", digits.size() - 1},
                           {"digit", reveal ? json(digits.back().value()) : json(nullptr)}}
                          .dump());
        if (session_->phase() == SessionPhase::Complete) {
            out.push_back(
                json{{"type", "session_complete"}, {"pin", reveal ? json(digits_string(digits)) : json(nullptr)}}
                    .dump());
            record();
        } else {
            session_ = advance(*session_);
            out.push_back(coloring_line(session_->current_coloring()));
        }
        break;
    }
    case SessionPhase::Failed: {
        const bool inconsistent = session_->failure() == FailureReason::UserInconsistent;
        out.push_back(error_line(inconsistent ? wire_error::kUserInconsistent : wire_error::kNonConvergence,
                                 inconsistent ? "no digit is consistent with the presses of this digit"
                                              : "press limit reached without identifying the digit"));
        auto state = state_message();
        out.insert(out.end(), state.begin(), state.end());
        record();
        break;
    }
    }
    return out;
}

} // namespace iftt
