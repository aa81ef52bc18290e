#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acdc/ids.hpp"
#include "acdc/lang/program.hpp"
#include "acdc/runtime/value.hpp"

namespace acdc::learn {

// Category order doubles as the schema sort key.
enum class FeatureCategory
{
    UsedInPredicate = 1,
    FormalParameter = 2,
    LocalOrGlobal = 3,
    Reduced = 4, // arrays and strings used or defined in the function
};

enum class Reduction
{
    Identity,     // int
    Bool01,       // bool
    StringDigest, // FNV-1a-64 of the bytes
    ArrayFold,    // order-sensitive 64-bit fold of the elements
};

std::string_view to_string(FeatureCategory c);
std::string_view to_string(Reduction r);

struct FeatureDescriptor
{
    enum class Source
    {
        Variable,
        CallResult,
    };

    std::string name;
    FeatureCategory category = FeatureCategory::UsedInPredicate;
    Reduction reduction = Reduction::Identity;
    Source source = Source::Variable;
    lang::VarRef var;                       // Variable
    std::vector<const lang::Expr*> calls;   // CallResult: every call site with this rendering
};

struct FeatureSchema
{
    PredicateId predicate;
    std::vector<FeatureDescriptor> features;

    [[nodiscard]] std::size_t size() const noexcept { return features.size(); }
    [[nodiscard]] std::vector<std::string> names() const;
};

// Value stored for a variable that is not live yet, or a call result that
// short-circuit evaluation skipped.
inline constexpr std::int64_t kUninitialized = std::numeric_limits<std::int64_t>::min();

// Derives the state vector layout captured right before `predicate` runs:
// variables and call results used in the condition, formal parameters, and the
// scalars, arrays and strings used or defined in the enclosing function. A
// variable keeps its lowest category; order is (category, name).
FeatureSchema build_schema(const lang::Program& program, PredicateId predicate);

std::int64_t reduce_string(std::string_view s) noexcept;
std::int64_t reduce_array(std::span<const std::int64_t> elements) noexcept;

// Maps one captured value to its numeric feature; the value's dynamic type
// selects the reduction rule.
std::int64_t featurize(const runtime::Value& value);

} // namespace acdc::learn
