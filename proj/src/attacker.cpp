#include "iftt/attacker.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace iftt {

namespace {

struct Branch {
    Pin prefix;
    ButtonMapping constraint;

    friend auto operator<=>(const Branch& a, const Branch& b)
    {
        if (auto c = a.prefix <=> b.prefix; c != 0)
            return c;
        return a.constraint.to_string() <=> b.constraint.to_string();
    }
    friend bool operator==(const Branch&, const Branch&) = default;
};

std::vector<Branch> extend(const std::vector<Branch>& branches, int n_buttons, std::span<const PressEvent> presses)
{
    std::set<Branch> next;
    for (const Branch& br : branches) {
        for (EpisodeCandidate& cand : decode_episode(n_buttons, presses, br.constraint)) {
            Branch nb{br.prefix, std::move(cand.constraint)};
            nb.prefix.push_back(cand.digit);
            next.insert(std::move(nb));
        }
    }
    return {next.begin(), next.end()};
}

std::uint64_t pow10(std::size_t k)
{
    if (k > 19)
        throw FormatError("transcript has too many episodes to count candidates");
    std::uint64_t v = 1;
    while (k--)
        v *= 10;
    return v;
}

} // namespace

std::vector<EpisodeCandidate> decode_episode(int n_buttons, std::span<const PressEvent> presses,
                                             const ButtonMapping& prior)
{
    EpisodeState state = new_episode(n_buttons, prior);
    for (std::size_t i = 0; i < presses.size(); ++i) {
        if (presses[i].button.index < 0 || presses[i].button.index >= n_buttons)
            throw FormatError("press " + std::to_string(i) + ": button " + std::to_string(presses[i].button.index) +
                                  " out of range",
                              std::nullopt, i);
        state = record_press(state, presses[i]);
        if (state.user_inconsistent())
            return {};
    }
    std::vector<EpisodeCandidate> out;
    for (Digit d : state.consistent_digits().digits())
        out.push_back({d, implied_mapping(state, d)});
    return out;
}

void validate_transcript(const Transcript& transcript)
{
    if (transcript.n_buttons < 2)
        throw FormatError("transcript declares " + std::to_string(transcript.n_buttons) + " buttons");
    for (std::size_t e = 0; e < transcript.episodes.size(); ++e) {
        const auto& presses = transcript.episodes[e].presses;
        for (std::size_t i = 0; i < presses.size(); ++i) {
            const int b = presses[i].button.index;
            if (b < 0 || b >= transcript.n_buttons)
                throw FormatError("episode " + std::to_string(e) + ", press " + std::to_string(i) + ": button " +
                                      std::to_string(b) + " out of range for " +
                                      std::to_string(transcript.n_buttons) + " buttons",
                                  e, i);
        }
    }
}

std::vector<Pin> decode_transcript(const Transcript& transcript)
{
    validate_transcript(transcript);
    std::vector<Branch> branches{Branch{{}, ButtonMapping(transcript.n_buttons)}};
    for (const Episode& ep : transcript.episodes)
        branches = extend(branches, transcript.n_buttons, ep.presses);

    std::set<Pin> pins;
    for (const Branch& b : branches)
        pins.insert(b.prefix);
    return {pins.begin(), pins.end()};
}

std::vector<AmbiguityPoint> ambiguity_curve(const Transcript& transcript)
{
    validate_transcript(transcript);
    const std::size_t n_episodes = transcript.episodes.size();
    const int n_buttons = transcript.n_buttons;

    std::vector<AmbiguityPoint> curve;
    curve.push_back({0, pow10(n_episodes)});

    std::vector<Branch> branches{Branch{{}, ButtonMapping(n_buttons)}};
    std::size_t seen = 0;
    for (std::size_t e = 0; e < n_episodes; ++e) {
        const auto& presses = transcript.episodes[e].presses;
        const std::uint64_t free_tail = pow10(n_episodes - e - 1);

        std::vector<EpisodeState> states;
        states.reserve(branches.size());
        for (const Branch& br : branches)
            states.push_back(new_episode(n_buttons, br.constraint));

        for (const PressEvent& press : presses) {
            std::set<Pin> prefixes;
            for (std::size_t i = 0; i < branches.size(); ++i) {
                if (states[i].user_inconsistent())
                    continue;
                states[i] = record_press(states[i], press);
                for (Digit d : states[i].consistent_digits().digits()) {
                    Pin p = branches[i].prefix;
                    p.push_back(d);
                    prefixes.insert(std::move(p));
                }
            }
            curve.push_back({++seen, static_cast<std::uint64_t>(prefixes.size()) * free_tail});
        }
        branches = extend(branches, n_buttons, presses);
    }
    return curve;
}

} // namespace iftt
