#pragma once

#include <string>

#include "acdc/lang/ast.hpp"

namespace acdc::lang {

// Canonical rendering of an expression: single spaces around binary
// operators, parentheses only where precedence requires them.
std::string print_expr(const Expr& expr);

} // namespace acdc::lang
