// planner.hpp -- picks the coloring shown at the next round.

#pragma once

#include "iftt/consistency_engine.hpp"
#include "iftt/core_model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace iftt {

enum class PlannerStrategy { GreedyDiscrimination, RandomBalanced };

std::string to_string(PlannerStrategy s);
/// Accepts "greedy" and "random". Throws ConfigurationError otherwise.
PlannerStrategy parse_planner_strategy(std::string_view name);

struct PlannerConfig {
    PlannerStrategy strategy = PlannerStrategy::GreedyDiscrimination;
    std::uint64_t rng_seed = 0;

    friend bool operator==(const PlannerConfig&, const PlannerConfig&) = default;
};

/// Elimination potential plus pair-split bonus:
///
///   sum over buttons b of |{d consistent : |H(d,b) + {color of d}| = 2}|
///   + number of unordered pairs of consistent digits with different colors
///
/// Throws PreconditionError if the coloring is not balanced.
std::uint64_t score_coloring(const EpisodeState& state, const Coloring& coloring);

/// Number of (button, pair of consistent digits) such that a press of that
/// button would eliminate exactly one digit of the pair. Equal to
/// sum over b of k_b * (n - k_b), with n consistent digits of which k_b would
/// be eliminated by a press of b.
std::uint64_t discrimination_score(const EpisodeState& state, const Coloring& coloring);

/// Balanced coloring for the next round.
///
/// GreedyDiscrimination ranks all 252 balanced colorings by
/// (discrimination_score, score_coloring), drops `previous` from the tied
/// maximizers when another one exists, and picks uniformly among the rest.
/// RandomBalanced picks uniformly among all balanced colorings.
///
/// Randomness is seeded from config.rng_seed and the state, so identical
/// inputs give identical output. Throws PreconditionError if fewer than two
/// digits are consistent.
Coloring choose_coloring(const EpisodeState& state, const PlannerConfig& config,
                         const std::optional<Coloring>& previous = std::nullopt);

/// Hash of the episode state, used to derive per-round seeds.
std::uint64_t state_fingerprint(const EpisodeState& state) noexcept;

} // namespace iftt
