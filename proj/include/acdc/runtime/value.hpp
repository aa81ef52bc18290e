#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace acdc::runtime {

using IntArray = std::vector<std::int64_t>;

// monostate marks a variable that has not been declared yet in the current
// activation.
using Value = std::variant<std::monostate, std::int64_t, bool, std::string, IntArray>;

std::string render(const Value& v);

} // namespace acdc::runtime
