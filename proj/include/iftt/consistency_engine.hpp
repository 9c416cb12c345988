// consistency_engine.hpp -- interpretation hypotheses and the consistency test.
//
// One hypothesis per digit d: "the user is entering d". Under it, every press
// of button b while d was shown in color c says "b means c". A hypothesis
// dies as soon as some button has been used to mean both colors.
//
// Buttons whose color is already known (the two colored buttons of the
// classic interface, or buttons learned while entering earlier digits) are
// handled by seeding each hypothesis with a singleton set for that button.
// Pressing such a button while d has the other color then produces a
// two-color set, which is exactly the "discard every digit of the other
// color" rule of the known-mapping interface.

#pragma once

#include "iftt/core_model.hpp"

#include <optional>

namespace iftt {

class EpisodeState {
public:
    EpisodeState() = default;

    /// Builds a state from an arbitrary history; the consistent set is
    /// recomputed from it.
    static EpisodeState from_history(HistoryPerDigit history, int rounds_elapsed = 0);

    const HistoryPerDigit& history() const noexcept { return history_; }
    DigitSet consistent_digits() const noexcept { return consistent_; }
    int rounds_elapsed() const noexcept { return rounds_; }
    int button_count() const noexcept { return history_.button_count(); }

    /// Set when no hypothesis survives.
    bool user_inconsistent() const noexcept { return consistent_.empty(); }

    friend bool operator==(const EpisodeState&, const EpisodeState&) = default;

private:
    friend EpisodeState record_press(const EpisodeState&, const PressEvent&);

    HistoryPerDigit history_;
    DigitSet consistent_;
    int rounds_ = 0;
};

/// Fresh episode. Buttons with a color in `known_mapping` are seeded for all
/// ten digits; the mapping may be empty, partial or complete but must have
/// `n_buttons` entries (an empty default-constructed mapping is accepted).
EpisodeState new_episode(int n_buttons, const ButtonMapping& known_mapping = {});

/// Records the press under every hypothesis, eliminated ones included, then
/// recomputes the consistent set. An empty result is returned, not thrown;
/// check user_inconsistent().
EpisodeState record_press(const EpisodeState& state, const PressEvent& press);

/// The digit once exactly one hypothesis remains, nullopt while several do.
/// Throws UserInconsistencyError when none does.
std::optional<Digit> identified_digit(const EpisodeState& state);

/// The partial mapping implied by hypothesis `digit`: the single recorded
/// color per button, absent for buttons with no record. Throws
/// PreconditionError if `digit` is not consistent.
ButtonMapping implied_mapping(const EpisodeState& state, Digit digit);

/// implied_mapping() for the identified digit. Throws PreconditionError
/// unless `digit` is the only consistent digit.
ButtonMapping extract_learned_mapping(const EpisodeState& state, Digit digit);

} // namespace iftt
