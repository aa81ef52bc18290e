#pragma once

#include <optional>
#include <span>
#include <vector>

#include "acdc/graphs/cdg.hpp"
#include "acdc/ids.hpp"
#include "acdc/localize/coverage.hpp"

namespace acdc::localize {

// Y_s = alpha + tau * T_s + beta * C_s fitted over the suite. `beta` is
// absent when s has no control predecessor or C_s had to be dropped.
struct CausalModelFit
{
    StatementId statement;
    double alpha = 0.0;
    double tau = 0.0;
    std::optional<double> beta;
    bool degenerate = false; // T_s constant, tau forced to 0
};

// Least squares over the given regressor columns via the normal equations.
// Returns one coefficient per column. Throws acdc::Error when X'X is
// singular.
std::vector<double> least_squares(const std::vector<std::vector<double>>& columns, std::span<const double> y);

// Fits the model from raw per-test indicators. `c` is empty when the
// statement has no control predecessor. Constant regressors are dropped,
// C is dropped when it is collinear with T, and a constant T yields tau = 0
// with the degenerate flag.
CausalModelFit fit_causal_model(std::span<const double> y, std::span<const double> t,
                                std::optional<std::span<const double>> c);

// Builds Y (failure), T (s executed) and C (some static Cdg parent of s
// executed) from a profiled suite and fits them.
CausalModelFit causal_effect(StatementId s, const SuiteProfile& profile, const graphs::Cdg& cdg);

} // namespace acdc::localize
