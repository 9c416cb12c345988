// attacker.hpp -- what an observer with a full recording can infer.
//
// The observer sees the same colorings and the same presses as the machine,
// so it can run the very same consistency engine. The only thing it lacks is
// the per-episode ground truth, which the engine does not use either.

#pragma once

#include "iftt/consistency_engine.hpp"
#include "iftt/core_model.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace iftt {

/// One surviving hypothesis: the digit and the button colors it implies.
struct EpisodeCandidate {
    Digit digit;
    ButtonMapping constraint;

    friend bool operator==(const EpisodeCandidate&, const EpisodeCandidate&) = default;
};

/// Replays an episode through the consistency engine, seeded with `prior`
/// (colors already pinned down by earlier episodes), and returns every
/// digit still consistent, in increasing order. An empty result means the
/// observed presses are inconsistent under every digit. Throws FormatError
/// for out-of-range buttons.
std::vector<EpisodeCandidate> decode_episode(int n_buttons, std::span<const PressEvent> presses,
                                             const ButtonMapping& prior = {});

/// Throws FormatError naming the first offending episode/press.
void validate_transcript(const Transcript& transcript);

using Pin = std::vector<Digit>;

/// Every PIN (one digit per episode) consistent with the transcript, sorted.
/// Mapping constraints are threaded from episode to episode exactly like the
/// session threads its learned colors.
std::vector<Pin> decode_transcript(const Transcript& transcript);

struct AmbiguityPoint {
    std::size_t presses = 0;
    /// Number of full-length PINs still possible; digits of episodes that
    /// have not started yet are unconstrained and count 10 each.
    std::uint64_t candidates = 0;

    friend bool operator==(const AmbiguityPoint&, const AmbiguityPoint&) = default;
};

/// One point per observed press prefix, from 0 presses to all of them.
/// Non-increasing; ends at 1 for a complete transcript of a consistent user.
std::vector<AmbiguityPoint> ambiguity_curve(const Transcript& transcript);

} // namespace iftt
