#include "iftt/core_model.hpp"

#include <algorithm>
#include <bit>

namespace iftt {

std::optional<Color> color_from_char(char ch) noexcept
{
    switch (ch) {
    case 'Y': return Color::Yellow;
    case 'G': return Color::Grey;
    default: return std::nullopt;
    }
}

void require_valid_button_count(int n_buttons)
{
    if (n_buttons < 2)
        throw ConfigurationError("at least 2 buttons are required, got " + std::to_string(n_buttons));
}

int DigitSet::size() const noexcept { return std::popcount(mask_); }

std::vector<Digit> DigitSet::digits() const
{
    std::vector<Digit> out;
    for (int d = 0; d < static_cast<int>(kDigitCount); ++d)
        if ((mask_ >> d) & 1u)
            out.emplace_back(d);
    return out;
}

// ----------------------------------------------------------------------------

std::uint16_t Coloring::yellow_mask() const noexcept
{
    std::uint16_t mask = 0;
    for (std::size_t d = 0; d < kDigitCount; ++d)
        if (colors[d] == Color::Yellow)
            mask |= static_cast<std::uint16_t>(1u << d);
    return mask;
}

Coloring Coloring::from_yellow_mask(std::uint16_t mask) noexcept
{
    Coloring c;
    for (std::size_t d = 0; d < kDigitCount; ++d)
        c.colors[d] = ((mask >> d) & 1u) ? Color::Yellow : Color::Grey;
    return c;
}

std::string Coloring::to_string() const
{
    std::string s(kDigitCount, ' ');
    for (std::size_t d = 0; d < kDigitCount; ++d)
        s[d] = to_char(colors[d]);
    return s;
}

std::optional<Coloring> Coloring::parse(std::string_view text) noexcept
{
    if (text.size() != kDigitCount)
        return std::nullopt;
    Coloring c;
    for (std::size_t d = 0; d < kDigitCount; ++d) {
        auto color = color_from_char(text[d]);
        if (!color)
            return std::nullopt;
        c.colors[d] = *color;
    }
    return c;
}

bool coloring_is_balanced(const Coloring& coloring) noexcept
{
    return std::popcount(coloring.yellow_mask()) == 5;
}

const std::vector<Coloring>& all_balanced_colorings()
{
    static const std::vector<Coloring> table = [] {
        std::vector<Coloring> out;
        for (unsigned mask = 0; mask <= DigitSet::kFullMask; ++mask)
            if (std::popcount(mask) == 5)
                out.push_back(Coloring::from_yellow_mask(static_cast<std::uint16_t>(mask)));
        return out;
    }();
    return table;
}

// ----------------------------------------------------------------------------

bool ButtonMapping::is_complete() const noexcept
{
    return std::all_of(colors_.begin(), colors_.end(), [](const auto& c) { return c.has_value(); });
}

int ButtonMapping::count(Color c) const noexcept
{
    return static_cast<int>(std::count(colors_.begin(), colors_.end(), std::optional<Color>(c)));
}

int ButtonMapping::known_count() const noexcept
{
    return count(Color::Yellow) + count(Color::Grey);
}

bool ButtonMapping::is_valid_user_mapping() const noexcept
{
    return is_complete() && count(Color::Yellow) >= 1 && count(Color::Grey) >= 1;
}

std::string ButtonMapping::to_string() const
{
    std::string s;
    s.reserve(colors_.size());
    for (const auto& c : colors_)
        s.push_back(c ? to_char(*c) : '.');
    return s;
}

std::optional<ButtonMapping> ButtonMapping::parse(std::string_view text) noexcept
{
    std::vector<std::optional<Color>> colors;
    colors.reserve(text.size());
    for (char ch : text) {
        if (ch == '.') {
            colors.emplace_back();
            continue;
        }
        auto c = color_from_char(ch);
        if (!c)
            return std::nullopt;
        colors.emplace_back(*c);
    }
    return ButtonMapping(std::move(colors));
}

std::vector<ButtonMapping> enumerate_valid_mappings(int n_buttons)
{
    require_valid_button_count(n_buttons);
    if (n_buttons > 24)
        throw ConfigurationError("refusing to enumerate mappings for more than 24 buttons");
    const std::uint32_t total = 1u << n_buttons;
    std::vector<ButtonMapping> out;
    out.reserve(total - 2);
    // Counting in binary with button 0 as the most significant bit and
    // Grey = 1 yields lexicographic order with Yellow < Grey.
    for (std::uint32_t code = 1; code + 1 < total; ++code) {
        std::vector<std::optional<Color>> colors(static_cast<std::size_t>(n_buttons));
        for (int b = 0; b < n_buttons; ++b) {
            bool grey = (code >> (n_buttons - 1 - b)) & 1u;
            colors[static_cast<std::size_t>(b)] = grey ? Color::Grey : Color::Yellow;
        }
        out.emplace_back(std::move(colors));
    }
    return out;
}

// ----------------------------------------------------------------------------

HistoryPerDigit::HistoryPerDigit(int n_buttons)
  : n_buttons_(n_buttons),
    cells_(kDigitCount * static_cast<std::size_t>(std::max(n_buttons, 0)))
{
    require_valid_button_count(n_buttons);
}

bool HistoryPerDigit::is_consistent(Digit d) const noexcept
{
    auto first = cells_.begin() + static_cast<std::ptrdiff_t>(d.index() * static_cast<std::size_t>(n_buttons_));
    return std::all_of(first, first + n_buttons_, [](ColorSet s) { return s.size() <= 1; });
}

std::size_t Transcript::total_presses() const noexcept
{
    std::size_t n = 0;
    for (const auto& e : episodes)
        n += e.presses.size();
    return n;
}

} // namespace iftt
