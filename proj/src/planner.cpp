#include "iftt/planner.hpp"

#include "iftt/rng.hpp"

#include <algorithm>
#include <bit>
#include <utility>
#include <vector>

namespace iftt {

std::string to_string(PlannerStrategy s)
{
    return s == PlannerStrategy::GreedyDiscrimination ? "greedy" : "random";
}

PlannerStrategy parse_planner_strategy(std::string_view name)
{
    if (name == "greedy")
        return PlannerStrategy::GreedyDiscrimination;
    if (name == "random")
        return PlannerStrategy::RandomBalanced;
    throw ConfigurationError("unknown planner strategy '" + std::string(name) + "' (expected greedy or random)");
}

namespace {

// For one button: which consistent digits a press would eliminate if the
// digit is shown Yellow (it already means Grey there) or shown Grey.
struct ButtonMasks {
    std::uint16_t eliminated_if_yellow = 0;
    std::uint16_t eliminated_if_grey = 0;
};

std::vector<ButtonMasks> button_masks(const EpisodeState& state)
{
    const DigitSet consistent = state.consistent_digits();
    std::vector<ButtonMasks> out(static_cast<std::size_t>(state.button_count()));
    for (int b = 0; b < state.button_count(); ++b) {
        auto& m = out[static_cast<std::size_t>(b)];
        for (Digit d : consistent.digits()) {
            const ColorSet& seen = state.history().at(d, ButtonId{b});
            const auto bit = static_cast<std::uint16_t>(1u << d.index());
            if (seen.contains(Color::Grey))
                m.eliminated_if_yellow |= bit;
            if (seen.contains(Color::Yellow))
                m.eliminated_if_grey |= bit;
        }
    }
    return out;
}

int eliminated_count(const ButtonMasks& m, std::uint16_t yellow) noexcept
{
    const auto grey = static_cast<std::uint16_t>(~yellow & DigitSet::kFullMask);
    return std::popcount(static_cast<unsigned>(m.eliminated_if_yellow & yellow)) +
           std::popcount(static_cast<unsigned>(m.eliminated_if_grey & grey));
}

std::uint64_t split_pairs(std::uint16_t consistent, std::uint16_t yellow) noexcept
{
    const auto y = static_cast<std::uint64_t>(std::popcount(static_cast<unsigned>(consistent & yellow)));
    const auto n = static_cast<std::uint64_t>(std::popcount(static_cast<unsigned>(consistent)));
    return y * (n - y);
}

std::uint64_t score_with(const std::vector<ButtonMasks>& masks, std::uint16_t consistent, std::uint16_t yellow)
{
    std::uint64_t total = split_pairs(consistent, yellow);
    for (const auto& m : masks)
        total += static_cast<std::uint64_t>(eliminated_count(m, yellow));
    return total;
}

std::uint64_t discrimination_with(const std::vector<ButtonMasks>& masks, int n, std::uint16_t yellow)
{
    std::uint64_t total = 0;
    for (const auto& m : masks) {
        const int k = eliminated_count(m, yellow);
        total += static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(n - k);
    }
    return total;
}

void require_balanced(const Coloring& coloring)
{
    if (!coloring_is_balanced(coloring))
        throw PreconditionError("coloring " + coloring.to_string() + " is not balanced");
}

} // namespace

std::uint64_t score_coloring(const EpisodeState& state, const Coloring& coloring)
{
    require_balanced(coloring);
    return score_with(button_masks(state), state.consistent_digits().mask(), coloring.yellow_mask());
}

std::uint64_t discrimination_score(const EpisodeState& state, const Coloring& coloring)
{
    require_balanced(coloring);
    return discrimination_with(button_masks(state), state.consistent_digits().size(), coloring.yellow_mask());
}

std::uint64_t state_fingerprint(const EpisodeState& state) noexcept
{
    std::uint64_t h = derive_seed({static_cast<std::uint64_t>(state.button_count()),
                                   static_cast<std::uint64_t>(state.rounds_elapsed())});
    for (int d = 0; d < static_cast<int>(kDigitCount); ++d) {
        std::uint64_t word = 0;
        for (int b = 0; b < state.button_count(); ++b) {
            const ColorSet& s = state.history().at(Digit(d), ButtonId{b});
            word = (word << 2) | (s.contains(Color::Yellow) ? 1u : 0u) | (s.contains(Color::Grey) ? 2u : 0u);
            if (b % 30 == 29) {
                h = splitmix64(h ^ word);
                word = 0;
            }
        }
        h = splitmix64(h ^ word ^ static_cast<std::uint64_t>(d));
    }
    return h;
}

Coloring choose_coloring(const EpisodeState& state, const PlannerConfig& config,
                         const std::optional<Coloring>& previous)
{
    if (state.consistent_digits().size() < 2)
        throw PreconditionError("the episode is already decided; no coloring to plan");

    Rng rng(derive_seed({config.rng_seed, state_fingerprint(state)}));
    const auto& candidates = all_balanced_colorings();

    if (config.strategy == PlannerStrategy::RandomBalanced)
        return candidates[uniform_below(rng, candidates.size())];

    const auto masks = button_masks(state);
    const std::uint16_t consistent = state.consistent_digits().mask();
    const int n = state.consistent_digits().size();

    std::pair<std::uint64_t, std::uint64_t> best{0, 0};
    std::vector<const Coloring*> winners;
    for (const Coloring& c : candidates) {
        const std::uint16_t yellow = c.yellow_mask();
        const std::pair key{discrimination_with(masks, n, yellow), score_with(masks, consistent, yellow)};
        if (winners.empty() || key > best) {
            best = key;
            winners.assign(1, &c);
        } else if (key == best) {
            winners.push_back(&c);
        }
    }

    if (previous && winners.size() > 1)
        std::erase_if(winners, [&](const Coloring* c) { return *c == *previous; });

    return *winners[uniform_below(rng, winners.size())];
}

} // namespace iftt
