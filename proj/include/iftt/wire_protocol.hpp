// wire_protocol.hpp -- line-delimited JSON messages between an interactive
// client and one engine session.
//
// Client -> engine
//   {"type":"start","config":{"buttons":9,"pinLength":4,"strategy":"greedy",
//                             "seed":42,"revealLearnedColors":true,
//                             "revealDigits":false,"knownMapping":"YG"}}
//                                            (every config field optional)
//   {"type":"press","button":3}
//   {"type":"snapshot"}
//
// Engine -> client
//   {"type":"state","seed":42,"snapshot":{...}}
//   {"type":"coloring","colors":"YYGGYGYGGY"}
//   {"type":"digit_identified","position":0,"digit":4}   (digit null if hidden)
//   {"type":"session_complete","pin":"1234"}             (pin null if hidden)
//   {"type":"error","code":"bad_button","message":"..."}
//
// A coloring message always precedes the press it applies to.

#pragma once

#include "iftt/session.hpp"

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace iftt {

namespace wire_error {
inline constexpr const char* kParse = "parse_error";
inline constexpr const char* kBadMessage = "bad_message";
inline constexpr const char* kBadConfig = "bad_config";
inline constexpr const char* kBadButton = "bad_button";
inline constexpr const char* kNotStarted = "not_started";
inline constexpr const char* kWrongPhase = "wrong_phase";
inline constexpr const char* kUserInconsistent = "user_inconsistent";
inline constexpr const char* kNonConvergence = "non_convergence";
inline constexpr const char* kInternal = "internal_error";
} // namespace wire_error

nlohmann::json snapshot_to_json(const SessionSnapshot& view);

/// Receives the transcript of every session that completes, fails, or is
/// still open when the connection closes.
using TranscriptSink = std::function<void(const Transcript&)>;

/// One connection's worth of protocol state. Not thread-safe; the transport
/// feeds it one line at a time.
class ProtocolSession {
public:
    /// `default_seed` is used when a start message carries no seed.
    explicit ProtocolSession(std::uint64_t default_seed, TranscriptSink sink = {});
    ~ProtocolSession();

    ProtocolSession(const ProtocolSession&) = delete;
    ProtocolSession& operator=(const ProtocolSession&) = delete;

    /// Handles one inbound message; returns the outbound messages, each a
    /// single line without the trailing newline. Never throws on bad input.
    std::vector<std::string> handle_line(std::string_view line);

    /// Connection closed: flush the transcript of an unfinished session.
    void close();

    const std::optional<SessionState>& session() const noexcept { return session_; }
    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::vector<std::string> on_start(const nlohmann::json& msg);
    std::vector<std::string> on_press(const nlohmann::json& msg);
    std::vector<std::string> state_message() const;
    void record();

    std::uint64_t default_seed_;
    std::uint64_t seed_ = 0;
    TranscriptSink sink_;
    std::optional<SessionState> session_;
    bool recorded_ = false;
};

/// Builds a SessionConfig from a start message's "config" object. Throws
/// ConfigurationError.
SessionConfig session_config_from_json(const nlohmann::json& config, std::uint64_t default_seed);

} // namespace iftt
