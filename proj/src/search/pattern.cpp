#include "acdc/search/pattern.hpp"

#include <algorithm>

namespace acdc::search {

std::string_view to_string(Pattern p)
{
    switch (p) {
    case Pattern::All:
        return "all";
    case Pattern::First:
        return "first";
    case Pattern::Last:
        return "last";
    case Pattern::AllButFirst:
        return "all-first";
    case Pattern::AllButLast:
        return "all-last";
    case Pattern::AllButFirstAndLast:
        return "all-(first+last)";
    case Pattern::Second:
        return "first+1";
    case Pattern::SecondToLast:
        return "last-1";
    case Pattern::FirstAndLast:
        return "first+last";
    case Pattern::Odd:
        return "odd";
    case Pattern::Even:
        return "even";
    }
    return "?";
}

std::optional<Pattern> parse_pattern(std::string_view text)
{
    for (Pattern p : kPatterns)
        if (to_string(p) == text)
            return p;
    return std::nullopt;
}

std::vector<std::int64_t> occurrences_for_pattern(Pattern pattern, std::int64_t n)
{
    std::vector<std::int64_t> out;
    if (n <= 0)
        return out;
    auto range = [&](std::int64_t lo, std::int64_t hi, std::int64_t step = 1) {
        for (std::int64_t i = lo; i <= hi; i += step)
            out.push_back(i);
    };
    switch (pattern) {
    case Pattern::All:
        range(1, n);
        break;
    case Pattern::First:
        out.push_back(1);
        break;
    case Pattern::Last:
        out.push_back(n);
        break;
    case Pattern::AllButFirst:
        range(2, n);
        break;
    case Pattern::AllButLast:
        range(1, n - 1);
        break;
    case Pattern::AllButFirstAndLast:
        range(2, n - 1);
        break;
    case Pattern::Second:
        if (n >= 2)
            out.push_back(2);
        break;
    case Pattern::SecondToLast:
        if (n >= 2)
            out.push_back(n - 1);
        break;
    case Pattern::FirstAndLast:
        out.push_back(1);
        if (n > 1)
            out.push_back(n);
        break;
    case Pattern::Odd:
        range(1, n, 2);
        break;
    case Pattern::Even:
        range(2, n, 2);
        break;
    }
    return out;
}

runtime::OccurrenceSet occurrence_set(Pattern pattern, std::int64_t n)
{
    return runtime::OccurrenceSet::of(occurrences_for_pattern(pattern, n));
}

} // namespace acdc::search
