// simulator.hpp -- error-free simulated users and Monte Carlo experiments.

#pragma once

#include "iftt/core_model.hpp"
#include "iftt/planner.hpp"
#include "iftt/session.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace iftt {

/// A user who picked a PIN and a private button coloring, and always presses
/// a button of the color currently shown on their digit.
struct SimulatedUser {
    std::vector<Digit> pin;
    ButtonMapping mapping;
    std::uint64_t rng_seed = 0;

    /// Throws ConfigurationError unless the PIN is non-empty and the mapping
    /// is complete with both colors present.
    void validate() const;
};

/// Random PIN and a mapping drawn uniformly from the 2^n - 2 valid ones.
SimulatedUser make_random_user(int n_buttons, int pin_length, std::uint64_t seed);

/// The button pressed for PIN position `digit_index` at round `round` of that
/// digit's episode. Uniform among the buttons mapped to the digit's current
/// color; a pure function of its arguments.
ButtonId choose_press(const SimulatedUser& user, int digit_index, int round, const Coloring& coloring);

struct TrialReport {
    bool success = false;
    std::vector<Digit> recovered_pin;
    std::vector<int> presses_per_episode;
    int total_presses = 0;
    Transcript transcript;
    FailureReason failure = FailureReason::None;
    std::string diagnostic;

    /// The user's true digit stayed consistent after every press.
    bool true_digit_always_consistent = true;
    /// Learned colors after the first digit, and which buttons were pressed
    /// while entering it.
    std::optional<ButtonMapping> learned_after_first;
    std::vector<bool> pressed_in_first;
};

/// Drives one session to completion with `user`. config.n_buttons must match
/// the mapping and config.pin_length the PIN (ConfigurationError otherwise).
/// Failures are reported, not thrown.
TrialReport run_trial(const SimulatedUser& user, const SessionConfig& config);

struct SweepCell {
    int n_buttons = 9;
    PlannerStrategy strategy = PlannerStrategy::GreedyDiscrimination;
};

struct SweepSpec {
    std::vector<SweepCell> grid;
    int trials = 1;
    int pin_length = 4;
    std::uint64_t seed = 0;
    /// 0 = std::thread::hardware_concurrency().
    unsigned threads = 0;
};

struct EpisodeStats {
    int episode = 0;
    double mean = 0;
    double median = 0;
    int max = 0;
};

struct CellReport {
    SweepCell cell;
    int trials = 0;
    int successes = 0;
    double success_rate = 0;
    int non_convergence = 0;
    int soundness_violations = 0;
    /// Trials whose learned colors after the first digit disagreed with the
    /// user's mapping on a pressed button, or covered an unpressed one.
    int transfer_mismatches = 0;
    double mean_total_presses = 0;
    int max_episode_presses = 0;
    std::vector<EpisodeStats> per_episode;
};

struct SweepReport {
    SweepSpec spec;
    std::vector<CellReport> cells;
};

/// Trial i of a cell uses a user derived from (seed, n_buttons, i), so every
/// strategy faces the same users. Throws ConfigurationError on an empty grid
/// or trials < 1. If `trials_out` is given it receives every TrialReport,
/// cell-major, ordered by trial index.
SweepReport run_sweep(const SweepSpec& spec, std::vector<TrialReport>* trials_out = nullptr);

/// Session config used for trial `index` of `cell`.
SessionConfig trial_session_config(const SweepSpec& spec, const SweepCell& cell, int index);
SimulatedUser trial_user(const SweepSpec& spec, const SweepCell& cell, int index);

} // namespace iftt
