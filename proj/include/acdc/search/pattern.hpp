#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "acdc/runtime/trace.hpp"

namespace acdc::search {

// Declaration order is the simplicity rank.
enum class Pattern
{
    All,
    First,
    Last,
    AllButFirst,
    AllButLast,
    AllButFirstAndLast,
    Second,       // first+1
    SecondToLast, // last-1
    FirstAndLast,
    Odd,
    Even,
};

inline constexpr std::array<Pattern, 11> kPatterns = {
    Pattern::All,          Pattern::First,  Pattern::Last, Pattern::AllButFirst,
    Pattern::AllButLast,   Pattern::AllButFirstAndLast,    Pattern::Second,
    Pattern::SecondToLast, Pattern::FirstAndLast,          Pattern::Odd,
    Pattern::Even,
};

constexpr int simplicity_rank(Pattern p) noexcept { return static_cast<int>(p); }

std::string_view to_string(Pattern p);
std::optional<Pattern> parse_pattern(std::string_view text);

// Sorted 1-based occurrence indices the pattern selects among n evaluations.
std::vector<std::int64_t> occurrences_for_pattern(Pattern pattern, std::int64_t n);

runtime::OccurrenceSet occurrence_set(Pattern pattern, std::int64_t n);

} // namespace acdc::search
