// rng.hpp -- seed derivation helpers. Every random choice in the library is
// drawn from a std::mt19937_64 whose seed is derived from a user seed and the
// identity of the decision being made, so results never depend on call order.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace iftt {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Order-sensitive combination of several words into one seed.
constexpr std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) noexcept
{
    std::uint64_t h = 0x6a09e667f3bcc908ull;
    for (std::uint64_t p : parts)
        h = splitmix64(h ^ splitmix64(p));
    return h;
}

using Rng = std::mt19937_64;

/// Uniform integer in [0, n). Implemented by rejection so the stream is the
/// same with every standard library.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n)
{
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

} // namespace iftt
