#include "iftt/session.hpp"

#include "iftt/rng.hpp"

namespace iftt {

void SessionConfig::validate() const
{
    require_valid_button_count(n_buttons);
    if (pin_length < 1)
        throw ConfigurationError("PIN length must be at least 1, got " + std::to_string(pin_length));
    if (known_mapping.button_count() != 0 && known_mapping.button_count() != n_buttons)
        throw ConfigurationError("known mapping covers " + std::to_string(known_mapping.button_count()) +
                                 " buttons, session has " + std::to_string(n_buttons));
}

std::string to_string(SessionPhase p)
{
    switch (p) {
    case SessionPhase::AwaitingPress: return "awaiting_press";
    case SessionPhase::DigitIdentified: return "digit_identified";
    case SessionPhase::Complete: return "complete";
    case SessionPhase::Failed: return "failed";
    }
    return "unknown";
}

std::string to_string(FailureReason r)
{
    switch (r) {
    case FailureReason::None: return "none";
    case FailureReason::UserInconsistent: return "user_inconsistent";
    case FailureReason::NonConvergence: return "non_convergence";
    }
    return "unknown";
}

namespace {

PlannerConfig episode_planner(const SessionConfig& config, std::size_t episode)
{
    PlannerConfig p = config.planner;
    p.rng_seed = derive_seed({config.planner.rng_seed, static_cast<std::uint64_t>(episode)});
    return p;
}

} // namespace

void SessionState::begin_episode()
{
    episode_ = new_episode(config_.n_buttons, learned_);
    coloring_ = choose_coloring(episode_, episode_planner(config_, entered_.size()));
    transcript_.episodes.emplace_back();
    phase_ = SessionPhase::AwaitingPress;
}

SessionState start_session(const SessionConfig& config)
{
    config.validate();
    SessionState s;
    s.config_ = config;
    s.learned_ = config.known_mapping.button_count() == 0 ? ButtonMapping(config.n_buttons) : config.known_mapping;
    s.transcript_.n_buttons = config.n_buttons;
    s.begin_episode();
    return s;
}

SessionState submit_press(const SessionState& state, ButtonId button)
{
    if (state.phase_ != SessionPhase::AwaitingPress)
        throw StateMachineError("press not accepted in phase " + to_string(state.phase_));
    if (button.index < 0 || button.index >= state.config_.n_buttons)
        throw PreconditionError("button " + std::to_string(button.index) + " out of range for " +
                                std::to_string(state.config_.n_buttons) + " buttons");

    SessionState next = state;
    const PressEvent press{state.coloring_, button};
    next.episode_ = record_press(state.episode_, press);
    next.transcript_.episodes.back().presses.push_back(press);

    if (next.episode_.user_inconsistent()) {
        next.phase_ = SessionPhase::Failed;
        next.failure_ = FailureReason::UserInconsistent;
        return next;
    }

    if (auto digit = identified_digit(next.episode_)) {
        const ButtonMapping learned = extract_learned_mapping(next.episode_, *digit);
        for (int b = 0; b < learned.button_count(); ++b) {
            auto c = learned.at(ButtonId{b});
            if (!c)
                continue;
            auto existing = next.learned_.at(ButtonId{b});
            if (existing && *existing != *c)
                throw InternalInvariantError("learned color of button " + std::to_string(b) + " changed");
            next.learned_.set(ButtonId{b}, *c);
        }
        next.entered_.push_back(*digit);
        if (next.config_.reveal_digits)
            next.transcript_.episodes.back().identified_digit = *digit;
        next.phase_ = static_cast<int>(next.entered_.size()) == next.config_.pin_length ? SessionPhase::Complete
                                                                                        : SessionPhase::DigitIdentified;
        return next;
    }

    if (next.episode_.rounds_elapsed() >= kMaxPressesPerEpisode) {
        next.phase_ = SessionPhase::Failed;
        next.failure_ = FailureReason::NonConvergence;
        return next;
    }

    next.coloring_ = choose_coloring(next.episode_, episode_planner(next.config_, next.entered_.size()), state.coloring_);
    return next;
}

SessionState advance(const SessionState& state)
{
    if (state.phase_ != SessionPhase::DigitIdentified)
        throw StateMachineError("advance not accepted in phase " + to_string(state.phase_));
    SessionState next = state;
    next.begin_episode();
    return next;
}

SessionSnapshot snapshot(const SessionState& state)
{
    SessionSnapshot v;
    v.phase = state.phase();
    v.failure = state.failure();
    v.n_buttons = state.config().n_buttons;
    v.pin_length = state.config().pin_length;
    v.coloring = state.current_coloring();

    const EpisodeState& ep = state.current_episode();
    for (int d = 0; d < static_cast<int>(kDigitCount); ++d) {
        const Digit digit(d);
        v.consistent[digit.index()] = ep.consistent_digits().contains(digit);
        for (int b = 0; b < v.n_buttons; ++b)
            if (ep.history().at(digit, ButtonId{b}).size() == 2)
                v.conflicts[digit.index()].push_back(ButtonId{b});
    }
    if (!state.transcript().episodes.empty()) {
        for (const PressEvent& p : state.transcript().episodes.back().presses)
            for (int d = 0; d < static_cast<int>(kDigitCount); ++d)
                v.dots[static_cast<std::size_t>(d)].push_back(Dot{p.button, p.coloring[Digit(d)]});
    }

    v.button_colors.assign(static_cast<std::size_t>(v.n_buttons), std::nullopt);
    if (state.config().reveal_learned_colors) {
        auto entries = state.learned_mapping().entries();
        v.button_colors.assign(entries.begin(), entries.end());
    }

    v.digits_entered = static_cast<int>(state.entered_digits().size());
    if (state.config().reveal_digits)
        v.digits = state.entered_digits();
    return v;
}

} // namespace iftt
