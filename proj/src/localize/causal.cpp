#include "acdc/localize/causal.hpp"

#include <algorithm>
#include <cmath>

#include "acdc/error.hpp"

namespace acdc::localize {

namespace {

bool is_constant(std::span<const double> v)
{
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

bool collinear(std::span<const double> t, std::span<const double> c)
{
    bool same = true;
    bool flipped = true;
    for (std::size_t i = 0; i < t.size(); ++i) {
        same = same && t[i] == c[i];
        flipped = flipped && t[i] == 1.0 - c[i];
    }
    return same || flipped;
}

} // namespace

std::vector<double> least_squares(const std::vector<std::vector<double>>& columns, std::span<const double> y)
{
    const std::size_t k = columns.size();
    // augmented normal equations [X'X | X'y]
    std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t r = 0; r < y.size(); ++r)
                a[i][j] += columns[i][r] * columns[j][r];
        for (std::size_t r = 0; r < y.size(); ++r)
            a[i][k] += columns[i][r] * y[r];
    }
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col]))
                pivot = r;
        if (std::abs(a[pivot][col]) < 1e-12)
            throw Error("least squares: singular normal equations");
        std::swap(a[col], a[pivot]);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col)
                continue;
            const double f = a[r][col] / a[col][col];
            for (std::size_t j = col; j <= k; ++j)
                a[r][j] -= f * a[col][j];
        }
    }
    std::vector<double> coef(k);
    for (std::size_t i = 0; i < k; ++i)
        coef[i] = a[i][k] / a[i][i];
    return coef;
}

CausalModelFit fit_causal_model(std::span<const double> y, std::span<const double> t,
                                std::optional<std::span<const double>> c)
{
    CausalModelFit fit;
    if (y.empty())
        return fit;
    if (c && (c->size() != t.size()))
        throw Error("causal model: C has a different length than T");

    const std::vector<double> ones(y.size(), 1.0);
    std::vector<std::vector<double>> columns{ones};
    const bool use_t = !is_constant(t);
    const bool use_c = c && !is_constant(*c) && !(use_t && collinear(t, *c));
    if (use_t)
        columns.emplace_back(t.begin(), t.end());
    if (use_c)
        columns.emplace_back(c->begin(), c->end());

    const std::vector<double> coef = least_squares(columns, y);
    fit.alpha = coef[0];
    std::size_t next = 1;
    if (use_t)
        fit.tau = coef[next++];
    else
        fit.degenerate = true;
    if (use_c)
        fit.beta = coef[next];
    return fit;
}

CausalModelFit causal_effect(StatementId s, const SuiteProfile& profile, const graphs::Cdg& cdg)
{
    const std::size_t n = profile.size();
    std::vector<double> y(n), t(n), c(n);
    const auto& parents = cdg.parents(s);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = profile.verdicts[i] == lang::Verdict::Fail ? 1.0 : 0.0;
        t[i] = profile.covers(i, s) ? 1.0 : 0.0;
        c[i] = std::any_of(parents.begin(), parents.end(), [&](StatementId p) { return profile.covers(i, p); })
                   ? 1.0
                   : 0.0;
    }
    CausalModelFit fit = parents.empty() ? fit_causal_model(y, t, std::nullopt)
                                         : fit_causal_model(y, t, std::span<const double>(c));
    fit.statement = s;
    return fit;
}

} // namespace acdc::localize
