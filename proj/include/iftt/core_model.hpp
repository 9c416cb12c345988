// core_model.hpp -- domain types shared by the engine, planner, session,
// simulator and attacker.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace iftt {

// ============================================================================
// Errors
// ============================================================================

/// A configuration value (button count, PIN length, mapping size...) is out
/// of range.
class ConfigurationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its precondition.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// No interpretation hypothesis is left: the user pressed the same button to
/// mean both colors under every digit.
class UserInconsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An invariant that a consistent user cannot break was broken anyway.
class InternalInvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed or unusable transcript data. Carries the location when known.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& message, std::optional<std::size_t> episode = std::nullopt,
                         std::optional<std::size_t> press = std::nullopt)
      : std::runtime_error(message), episode_(episode), press_(press)
    {
    }

    std::optional<std::size_t> episode() const noexcept { return episode_; }
    std::optional<std::size_t> press() const noexcept { return press_; }

private:
    std::optional<std::size_t> episode_;
    std::optional<std::size_t> press_;
};

// ============================================================================
// Basic types
// ============================================================================

enum class Color : std::uint8_t { Yellow = 0, Grey = 1 };

constexpr Color opposite(Color c) noexcept
{
    return c == Color::Yellow ? Color::Grey : Color::Yellow;
}

constexpr char to_char(Color c) noexcept { return c == Color::Yellow ? 'Y' : 'G'; }

std::optional<Color> color_from_char(char ch) noexcept;

inline constexpr std::size_t kDigitCount = 10;

/// A PIN digit, 0..9.
class Digit {
public:
    constexpr Digit() = default;

    /// Throws ConfigurationError unless 0 <= value <= 9.
    constexpr explicit Digit(int value) : value_(checked(value)) {}

    constexpr int value() const noexcept { return value_; }
    constexpr std::size_t index() const noexcept { return static_cast<std::size_t>(value_); }

    friend constexpr auto operator<=>(Digit, Digit) = default;

private:
    static constexpr int checked(int v)
    {
        if (v < 0 || v > 9)
            throw ConfigurationError("digit must be between 0 and 9, got " + std::to_string(v));
        return v;
    }

    int value_ = 0;
};

/// Index of a physical button. Range checks depend on the session's button
/// count and happen where that count is known.
struct ButtonId {
    int index = 0;

    friend constexpr auto operator<=>(ButtonId, ButtonId) = default;
};

/// Throws ConfigurationError if n < 2.
void require_valid_button_count(int n_buttons);

// ============================================================================
// Sets of digits and colors
// ============================================================================

/// Subset of {0..9} stored as a 10-bit mask.
class DigitSet {
public:
    static constexpr std::uint16_t kFullMask = (1u << kDigitCount) - 1;

    constexpr DigitSet() = default;
    constexpr explicit DigitSet(std::uint16_t mask) : mask_(mask & kFullMask) {}

    static constexpr DigitSet all() { return DigitSet(kFullMask); }

    constexpr bool contains(Digit d) const noexcept { return (mask_ >> d.index()) & 1u; }
    constexpr void insert(Digit d) noexcept { mask_ |= static_cast<std::uint16_t>(1u << d.index()); }
    constexpr void erase(Digit d) noexcept { mask_ &= static_cast<std::uint16_t>(~(1u << d.index())); }
    int size() const noexcept;
    constexpr bool empty() const noexcept { return mask_ == 0; }
    constexpr std::uint16_t mask() const noexcept { return mask_; }

    /// True iff every member of this set is also in `other`.
    constexpr bool is_subset_of(DigitSet other) const noexcept
    {
        return (mask_ & ~other.mask_) == 0;
    }

    /// Members in increasing order.
    std::vector<Digit> digits() const;

    friend constexpr bool operator==(DigitSet, DigitSet) = default;

private:
    std::uint16_t mask_ = 0;
};

/// The colors recorded for one (digit, button) pair. At most two elements.
class ColorSet {
public:
    constexpr ColorSet() = default;

    constexpr void insert(Color c) noexcept { bits_ |= bit(c); }
    constexpr bool contains(Color c) const noexcept { return bits_ & bit(c); }
    constexpr int size() const noexcept { return (bits_ & 1) + ((bits_ >> 1) & 1); }
    constexpr bool empty() const noexcept { return bits_ == 0; }

    /// The only element when size() == 1.
    constexpr std::optional<Color> single() const noexcept
    {
        if (bits_ == bit(Color::Yellow)) return Color::Yellow;
        if (bits_ == bit(Color::Grey)) return Color::Grey;
        return std::nullopt;
    }

    /// Size of this set with `c` added.
    constexpr int size_with(Color c) const noexcept
    {
        ColorSet copy = *this;
        copy.insert(c);
        return copy.size();
    }

    friend constexpr bool operator==(ColorSet, ColorSet) = default;

private:
    static constexpr std::uint8_t bit(Color c) noexcept
    {
        return static_cast<std::uint8_t>(1u << static_cast<unsigned>(c));
    }

    std::uint8_t bits_ = 0;
};

// ============================================================================
// Coloring
// ============================================================================

/// The color shown on each of the ten digits during one round.
struct Coloring {
    std::array<Color, kDigitCount> colors{};

    Color operator[](Digit d) const noexcept { return colors[d.index()]; }
    Color& operator[](Digit d) noexcept { return colors[d.index()]; }

    /// Bit d set iff digit d is Yellow.
    std::uint16_t yellow_mask() const noexcept;
    static Coloring from_yellow_mask(std::uint16_t mask) noexcept;

    /// Fixed 10-character form, e.g. "YYGGYGYGGY".
    std::string to_string() const;

    /// Parses the 10-character form. Returns nullopt on any other input.
    static std::optional<Coloring> parse(std::string_view text) noexcept;

    friend bool operator==(const Coloring&, const Coloring&) = default;
};

/// True iff exactly five digits are Yellow.
bool coloring_is_balanced(const Coloring& coloring) noexcept;

/// All C(10,5) = 252 balanced colorings, ordered by increasing yellow mask.
const std::vector<Coloring>& all_balanced_colorings();

// ============================================================================
// Button mappings
// ============================================================================

/// Button -> color assignment. An absent entry is an unknown ("black") button.
class ButtonMapping {
public:
    ButtonMapping() = default;
    explicit ButtonMapping(int n_buttons) : colors_(static_cast<std::size_t>(n_buttons)) {}
    explicit ButtonMapping(std::vector<std::optional<Color>> colors) : colors_(std::move(colors)) {}

    int button_count() const noexcept { return static_cast<int>(colors_.size()); }

    std::optional<Color> at(ButtonId b) const { return colors_.at(static_cast<std::size_t>(b.index)); }
    void set(ButtonId b, Color c) { colors_.at(static_cast<std::size_t>(b.index)) = c; }

    std::span<const std::optional<Color>> entries() const noexcept { return colors_; }

    bool is_complete() const noexcept;
    int count(Color c) const noexcept;
    int known_count() const noexcept;

    /// Complete with at least one button of each color.
    bool is_valid_user_mapping() const noexcept;

    /// One character per button: 'Y', 'G' or '.' for unknown.
    std::string to_string() const;
    static std::optional<ButtonMapping> parse(std::string_view text) noexcept;

    friend bool operator==(const ButtonMapping&, const ButtonMapping&) = default;

private:
    std::vector<std::optional<Color>> colors_;
};

/// Every complete mapping with at least one Yellow and one Grey button:
/// 2^n - 2 of them. Ordered lexicographically by button index with
/// Yellow < Grey. Throws ConfigurationError if n_buttons < 2.
std::vector<ButtonMapping> enumerate_valid_mappings(int n_buttons);

// ============================================================================
// Interaction history
// ============================================================================

/// Per digit hypothesis, per button, the colors that button was used to mean.
class HistoryPerDigit {
public:
    HistoryPerDigit() = default;
    explicit HistoryPerDigit(int n_buttons);

    int button_count() const noexcept { return n_buttons_; }

    const ColorSet& at(Digit d, ButtonId b) const { return cells_.at(offset(d, b)); }

    /// Append-only: sets never lose members.
    void add(Digit d, ButtonId b, Color c) { cells_.at(offset(d, b)).insert(c); }

    /// True iff every button's set for `d` has at most one color.
    bool is_consistent(Digit d) const noexcept;

    friend bool operator==(const HistoryPerDigit&, const HistoryPerDigit&) = default;

private:
    std::size_t offset(Digit d, ButtonId b) const
    {
        if (b.index < 0 || b.index >= n_buttons_)
            throw PreconditionError("button index " + std::to_string(b.index) + " out of range");
        return d.index() * static_cast<std::size_t>(n_buttons_) + static_cast<std::size_t>(b.index);
    }

    int n_buttons_ = 0;
    std::vector<ColorSet> cells_;
};

// ============================================================================
// Observer-visible record
// ============================================================================

struct PressEvent {
    Coloring coloring;
    ButtonId button;

    friend bool operator==(const PressEvent&, const PressEvent&) = default;
};

/// Presses made while entering one PIN digit.
struct Episode {
    std::vector<PressEvent> presses;
    /// Only filled when the interface displays entered digits.
    std::optional<Digit> identified_digit;

    friend bool operator==(const Episode&, const Episode&) = default;
};

/// Everything an observer with full visibility of the screen and the keypad
/// can record. Holds neither the user's mapping nor (unless displayed) the
/// PIN.
struct Transcript {
    int n_buttons = 0;
    std::vector<Episode> episodes;

    std::size_t total_presses() const noexcept;

    friend bool operator==(const Transcript&, const Transcript&) = default;
};

} // namespace iftt
