// session.hpp -- multi-digit PIN entry as a step-wise state machine.
//
//   start_session ──► AwaitingPress ──submit_press──► AwaitingPress
//                          ▲                 │
//                          │ advance         ├──► DigitIdentified (more digits to go)
//                          └─────────────────┤
//                                            ├──► Complete (last digit)
//                                            └──► Failed   (no hypothesis left, or press cap hit)
//
// Histories are per digit; only the learned button colors carry over to the
// next episode, where they seed the consistency engine.

#pragma once

#include "iftt/consistency_engine.hpp"
#include "iftt/core_model.hpp"
#include "iftt/planner.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace iftt {

/// An operation was attempted in a phase that does not allow it.
class StateMachineError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline constexpr int kMaxPressesPerEpisode = 100;

struct SessionConfig {
    int n_buttons = 9;
    int pin_length = 4;
    PlannerConfig planner{};
    /// Show button colors once learned. Off for the challenge interface.
    bool reveal_learned_colors = true;
    /// Show entered digits (and record them in the transcript).
    bool reveal_digits = false;
    /// Button colors known up front; empty for pure self-calibration.
    ButtonMapping known_mapping{};

    /// Throws ConfigurationError.
    void validate() const;
};

enum class SessionPhase { AwaitingPress, DigitIdentified, Complete, Failed };
enum class FailureReason { None, UserInconsistent, NonConvergence };

std::string to_string(SessionPhase p);
std::string to_string(FailureReason r);

class SessionState {
public:
    const SessionConfig& config() const noexcept { return config_; }
    const std::vector<Digit>& entered_digits() const noexcept { return entered_; }
    const ButtonMapping& learned_mapping() const noexcept { return learned_; }
    const EpisodeState& current_episode() const noexcept { return episode_; }
    const Coloring& current_coloring() const noexcept { return coloring_; }
    const Transcript& transcript() const noexcept { return transcript_; }
    SessionPhase phase() const noexcept { return phase_; }
    FailureReason failure() const noexcept { return failure_; }

private:
    friend SessionState start_session(const SessionConfig&);
    friend SessionState submit_press(const SessionState&, ButtonId);
    friend SessionState advance(const SessionState&);

    void begin_episode();

    SessionConfig config_;
    std::vector<Digit> entered_;
    ButtonMapping learned_;
    EpisodeState episode_;
    Coloring coloring_;
    Transcript transcript_;
    SessionPhase phase_ = SessionPhase::AwaitingPress;
    FailureReason failure_ = FailureReason::None;
};

/// Validates the config, opens the first episode (seeded with
/// config.known_mapping) and plans its first coloring.
SessionState start_session(const SessionConfig& config);

/// Records a press against the current coloring. Throws StateMachineError
/// unless the phase is AwaitingPress, PreconditionError for an out-of-range
/// button, and InternalInvariantError if a newly learned color contradicts
/// an earlier one.
SessionState submit_press(const SessionState& state, ButtonId button);

/// Leaves DigitIdentified: opens the next episode seeded with the learned
/// colors. Throws StateMachineError in any other phase.
SessionState advance(const SessionState& state);

struct Dot {
    ButtonId button;
    Color color;

    friend bool operator==(const Dot&, const Dot&) = default;
};

/// What the interface (and its tutorial dashboard) shows.
struct SessionSnapshot {
    SessionPhase phase = SessionPhase::AwaitingPress;
    FailureReason failure = FailureReason::None;
    int n_buttons = 0;
    int pin_length = 0;
    Coloring coloring;
    /// Per digit: is the hypothesis still alive.
    std::array<bool, kDigitCount> consistent{};
    /// Per digit: one dot per press of the current episode, on the pressed
    /// button, in the color that digit had at that press.
    std::array<std::vector<Dot>, kDigitCount> dots;
    /// Per digit: buttons used to mean both colors.
    std::array<std::vector<ButtonId>, kDigitCount> conflicts;
    /// Per button; all absent when learned colors are hidden.
    std::vector<std::optional<Color>> button_colors;
    int digits_entered = 0;
    /// Present only when digits are revealed.
    std::optional<std::vector<Digit>> digits;
};

SessionSnapshot snapshot(const SessionState& state);

} // namespace iftt
