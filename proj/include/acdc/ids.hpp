#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace acdc {

// Dense 0-based identifier tagged by what it indexes.
template <typename Tag>
struct Id
{
    std::int32_t value = -1;

    constexpr Id() = default;
    constexpr explicit Id(std::int32_t v) : value(v) {}

    [[nodiscard]] constexpr bool valid() const noexcept { return value >= 0; }
    [[nodiscard]] constexpr std::size_t index() const noexcept { return static_cast<std::size_t>(value); }

    friend constexpr auto operator<=>(Id, Id) = default;
};

using StatementId = Id<struct StatementTag>;
using PredicateId = Id<struct PredicateTag>;

} // namespace acdc

template <typename Tag>
struct std::hash<acdc::Id<Tag>>
{
    std::size_t operator()(acdc::Id<Tag> id) const noexcept { return std::hash<std::int32_t>{}(id.value); }
};
