#include "iftt/consistency_engine.hpp"

namespace iftt {

namespace {

DigitSet compute_consistent(const HistoryPerDigit& history)
{
    DigitSet out;
    for (int d = 0; d < static_cast<int>(kDigitCount); ++d)
        if (history.is_consistent(Digit(d)))
            out.insert(Digit(d));
    return out;
}

} // namespace

EpisodeState EpisodeState::from_history(HistoryPerDigit history, int rounds_elapsed)
{
    if (rounds_elapsed < 0)
        throw PreconditionError("rounds_elapsed must be non-negative");
    EpisodeState s;
    s.consistent_ = compute_consistent(history);
    s.history_ = std::move(history);
    s.rounds_ = rounds_elapsed;
    return s;
}

EpisodeState new_episode(int n_buttons, const ButtonMapping& known_mapping)
{
    HistoryPerDigit history(n_buttons);
    if (known_mapping.button_count() != 0) {
        if (known_mapping.button_count() != n_buttons)
            throw ConfigurationError("known mapping has " + std::to_string(known_mapping.button_count()) +
                                     " buttons, expected " + std::to_string(n_buttons));
        for (int b = 0; b < n_buttons; ++b) {
            auto c = known_mapping.at(ButtonId{b});
            if (!c)
                continue;
            for (int d = 0; d < static_cast<int>(kDigitCount); ++d)
                history.add(Digit(d), ButtonId{b}, *c);
        }
    }
    return EpisodeState::from_history(std::move(history));
}

EpisodeState record_press(const EpisodeState& state, const PressEvent& press)
{
    if (press.button.index < 0 || press.button.index >= state.button_count())
        throw PreconditionError("button index " + std::to_string(press.button.index) + " out of range for " +
                                std::to_string(state.button_count()) + " buttons");
    if (state.user_inconsistent())
        throw PreconditionError("episode has no consistent digit left");

    EpisodeState next = state;
    for (int d = 0; d < static_cast<int>(kDigitCount); ++d)
        next.history_.add(Digit(d), press.button, press.coloring[Digit(d)]);
    next.consistent_ = compute_consistent(next.history_);
    ++next.rounds_;
    return next;
}

std::optional<Digit> identified_digit(const EpisodeState& state)
{
    const DigitSet c = state.consistent_digits();
    if (c.empty())
        throw UserInconsistencyError("no digit is consistent with the presses recorded so far");
    if (c.size() != 1)
        return std::nullopt;
    return c.digits().front();
}

ButtonMapping implied_mapping(const EpisodeState& state, Digit digit)
{
    if (!state.consistent_digits().contains(digit))
        throw PreconditionError("digit " + std::to_string(digit.value()) + " is not consistent");
    ButtonMapping m(state.button_count());
    for (int b = 0; b < state.button_count(); ++b) {
        const ColorSet& seen = state.history().at(digit, ButtonId{b});
        if (seen.size() > 1)
            throw InternalInvariantError("consistent digit with a two-color button");
        if (auto c = seen.single())
            m.set(ButtonId{b}, *c);
    }
    return m;
}

ButtonMapping extract_learned_mapping(const EpisodeState& state, Digit digit)
{
    const DigitSet c = state.consistent_digits();
    if (c.size() != 1 || !c.contains(digit))
        throw PreconditionError("learned mapping is only defined once the digit is identified");
    return implied_mapping(state, digit);
}

} // namespace iftt
