#pragma once

#include <string>

#include "acdc/graphs/cdg.hpp"
#include "acdc/graphs/cfg.hpp"

namespace acdc::graphs {

// Graphviz dump of every function's CFG (solid) and CDG (dashed).
std::string to_dot(const lang::Program& program);

} // namespace acdc::graphs
