#include "acdc/learn/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "acdc/error.hpp"

namespace acdc::learn {

std::string_view to_string(KernelKind k)
{
    return k == KernelKind::Rbf ? "rbf" : "linear";
}

std::optional<KernelKind> parse_kernel(std::string_view text)
{
    if (text == "rbf")
        return KernelKind::Rbf;
    if (text == "linear")
        return KernelKind::Linear;
    return std::nullopt;
}

double kernel_value(KernelKind kind, double gamma, std::span<const double> a, std::span<const double> b)
{
    double acc = 0.0;
    if (kind == KernelKind::Linear) {
        for (std::size_t i = 0; i < a.size(); ++i)
            acc += a[i] * b[i];
        return acc;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::exp(-gamma * acc);
}

std::vector<double> ClassifierModel::standardize(std::span<const std::int64_t> features) const
{
    if (features.size() != mean.size())
        throw Error("classifier: expected " + std::to_string(mean.size()) + " features, got " +
                    std::to_string(features.size()));
    std::vector<double> out(features.size());
    for (std::size_t i = 0; i < features.size(); ++i)
        out[i] = (static_cast<double>(features[i]) - mean[i]) / scale[i];
    return out;
}

double ClassifierModel::decision_value(std::span<const std::int64_t> features) const
{
    if (constant)
        return *constant ? 1.0 : -1.0;
    const std::vector<double> x = standardize(features);
    double sum = bias;
    for (std::size_t i = 0; i < support_vectors.size(); ++i)
        sum += coefficients[i] * kernel_value(kernel, gamma, support_vectors[i], x);
    return sum;
}

bool ClassifierModel::negate(std::span<const std::int64_t> features) const
{
    return decision_value(features) > 0.0;
}

ClassifierModel ClassifierModel::constant_model(bool negate, std::size_t dimension)
{
    ClassifierModel m;
    m.mean.assign(dimension, 0.0);
    m.scale.assign(dimension, 1.0);
    m.constant = negate;
    return m;
}

void fit_standardization(const std::vector<std::vector<double>>& x, std::vector<double>& mean,
                         std::vector<double>& scale)
{
    const std::size_t d = x.empty() ? 0 : x.front().size();
    mean.assign(d, 0.0);
    scale.assign(d, 1.0);
    if (x.empty())
        return;
    const auto n = static_cast<double>(x.size());
    for (std::size_t j = 0; j < d; ++j) {
        double m = 0.0;
        for (const auto& row : x)
            m += row[j];
        m /= n;
        double var = 0.0;
        for (const auto& row : x)
            var += (row[j] - m) * (row[j] - m);
        var /= n;
        mean[j] = m;
        const double sd = std::sqrt(var);
        scale[j] = (sd > 0.0 && std::isfinite(sd)) ? sd : 1.0;
    }
}

namespace {

constexpr double kTau = 1e-12;
constexpr std::size_t kFullKernelLimit = 4000;

class Solver
{
  public:
    Solver(const std::vector<std::vector<double>>& x, const std::vector<int>& y, std::vector<double> upper,
           KernelKind kind, double gamma)
        : x_(x), y_(y), upper_(std::move(upper)), kind_(kind), gamma_(gamma), n_(x.size())
    {
        qd_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i)
            qd_[i] = kernel_value(kind_, gamma_, x_[i], x_[i]);
        if (n_ <= kFullKernelLimit) {
            full_.resize(n_ * n_);
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t j = 0; j <= i; ++j) {
                    const double q = y_[i] * y_[j] * kernel_value(kind_, gamma_, x_[i], x_[j]);
                    full_[i * n_ + j] = q;
                    full_[j * n_ + i] = q;
                }
        } else {
            row_a_.resize(n_);
            row_b_.resize(n_);
        }
    }

    void solve(double eps, std::size_t max_iter, TrainStats* stats)
    {
        alpha_.assign(n_, 0.0);
        grad_.assign(n_, -1.0);
        std::size_t iter = 0;
        bool converged = false;
        double violation = 0.0;
        while (iter < max_iter) {
            std::size_t i = 0;
            std::size_t j = 0;
            if (select(eps, i, j, violation)) {
                converged = true;
                break;
            }
            ++iter;
            step(i, j);
            if (stats)
                stats->objective.push_back(dual_objective());
        }
        if (!converged) {
            std::size_t i = 0;
            std::size_t j = 0;
            converged = select(eps, i, j, violation);
        }
        if (stats) {
            stats->iterations = iter;
            stats->converged = converged;
            stats->max_violation = violation;
        }
    }

    // rho as computed by libsvm: average y*G over free vectors, else the
    // midpoint of the feasible interval.
    [[nodiscard]] double rho() const
    {
        double ub = std::numeric_limits<double>::infinity();
        double lb = -std::numeric_limits<double>::infinity();
        double sum_free = 0.0;
        std::size_t free = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            const double yg = y_[i] * grad_[i];
            if (at_upper(i)) {
                if (y_[i] == -1)
                    ub = std::min(ub, yg);
                else
                    lb = std::max(lb, yg);
            } else if (at_lower(i)) {
                if (y_[i] == 1)
                    ub = std::min(ub, yg);
                else
                    lb = std::max(lb, yg);
            } else {
                ++free;
                sum_free += yg;
            }
        }
        if (free > 0)
            return sum_free / static_cast<double>(free);
        return (ub + lb) / 2.0;
    }

    [[nodiscard]] double dual_objective() const
    {
        // -(1/2 a'Qa - sum a), using G = Qa - 1
        double f = 0.0;
        for (std::size_t i = 0; i < n_; ++i)
            f += alpha_[i] * (grad_[i] - 1.0);
        return -f / 2.0;
    }

    [[nodiscard]] const std::vector<double>& alpha() const noexcept { return alpha_; }

  private:
    [[nodiscard]] bool at_upper(std::size_t i) const { return alpha_[i] >= upper_[i]; }
    [[nodiscard]] bool at_lower(std::size_t i) const { return alpha_[i] <= 0.0; }

    const double* row(std::size_t i, std::vector<double>& buf) const
    {
        if (!full_.empty())
            return &full_[i * n_];
        for (std::size_t k = 0; k < n_; ++k)
            buf[k] = y_[i] * y_[k] * kernel_value(kind_, gamma_, x_[i], x_[k]);
        return buf.data();
    }

    bool select(double eps, std::size_t& out_i, std::size_t& out_j, double& violation)
    {
        double gmax = -std::numeric_limits<double>::infinity();
        double gmax2 = -std::numeric_limits<double>::infinity();
        std::ptrdiff_t gmax_idx = -1;
        for (std::size_t t = 0; t < n_; ++t) {
            if (y_[t] == 1) {
                if (!at_upper(t) && -grad_[t] >= gmax) {
                    gmax = -grad_[t];
                    gmax_idx = static_cast<std::ptrdiff_t>(t);
                }
            } else if (!at_lower(t) && grad_[t] >= gmax) {
                gmax = grad_[t];
                gmax_idx = static_cast<std::ptrdiff_t>(t);
            }
        }
        if (gmax_idx < 0) {
            violation = 0.0;
            return true;
        }
        const auto i = static_cast<std::size_t>(gmax_idx);
        const double* qi = row(i, row_a_);
        std::ptrdiff_t gmin_idx = -1;
        double obj_diff_min = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n_; ++j) {
            double grad_diff = 0.0;
            double quad = 0.0;
            if (y_[j] == 1) {
                if (at_lower(j))
                    continue;
                grad_diff = gmax + grad_[j];
                gmax2 = std::max(gmax2, grad_[j]);
                quad = qd_[i] + qd_[j] - 2.0 * y_[i] * qi[j];
            } else {
                if (at_upper(j))
                    continue;
                grad_diff = gmax - grad_[j];
                gmax2 = std::max(gmax2, -grad_[j]);
                quad = qd_[i] + qd_[j] + 2.0 * y_[i] * qi[j];
            }
            if (grad_diff > 0.0) {
                const double obj_diff = -(grad_diff * grad_diff) / (quad > 0.0 ? quad : kTau);
                if (obj_diff <= obj_diff_min) {
                    gmin_idx = static_cast<std::ptrdiff_t>(j);
                    obj_diff_min = obj_diff;
                }
            }
        }
        violation = gmax + gmax2;
        if (violation < eps || gmin_idx < 0)
            return true;
        out_i = i;
        out_j = static_cast<std::size_t>(gmin_idx);
        return false;
    }

    void step(std::size_t i, std::size_t j)
    {
        const double* qi = row(i, row_a_);
        const double* qj = row(j, row_b_);
        const double ci = upper_[i];
        const double cj = upper_[j];
        const double old_ai = alpha_[i];
        const double old_aj = alpha_[j];
        double& ai = alpha_[i];
        double& aj = alpha_[j];
        if (y_[i] != y_[j]) {
            double quad = qd_[i] + qd_[j] + 2.0 * qi[j];
            if (quad <= 0.0)
                quad = kTau;
            const double delta = (-grad_[i] - grad_[j]) / quad;
            const double diff = ai - aj;
            ai += delta;
            aj += delta;
            if (diff > 0.0) {
                if (aj < 0.0) {
                    aj = 0.0;
                    ai = diff;
                }
            } else if (ai < 0.0) {
                ai = 0.0;
                aj = -diff;
            }
            if (diff > ci - cj) {
                if (ai > ci) {
                    ai = ci;
                    aj = ci - diff;
                }
            } else if (aj > cj) {
                aj = cj;
                ai = cj + diff;
            }
        } else {
            double quad = qd_[i] + qd_[j] - 2.0 * qi[j];
            if (quad <= 0.0)
                quad = kTau;
            const double delta = (grad_[i] - grad_[j]) / quad;
            const double sum = ai + aj;
            ai -= delta;
            aj += delta;
            if (sum > ci) {
                if (ai > ci) {
                    ai = ci;
                    aj = sum - ci;
                }
            } else if (aj < 0.0) {
                aj = 0.0;
                ai = sum;
            }
            if (sum > cj) {
                if (aj > cj) {
                    aj = cj;
                    ai = sum - cj;
                }
            } else if (ai < 0.0) {
                ai = 0.0;
                aj = sum;
            }
        }
        const double dai = ai - old_ai;
        const double daj = aj - old_aj;
        for (std::size_t k = 0; k < n_; ++k)
            grad_[k] += qi[k] * dai + qj[k] * daj;
    }

    const std::vector<std::vector<double>>& x_;
    const std::vector<int>& y_;
    std::vector<double> upper_;
    KernelKind kind_;
    double gamma_;
    std::size_t n_;
    std::vector<double> qd_;
    std::vector<double> full_;
    mutable std::vector<double> row_a_;
    mutable std::vector<double> row_b_;
    std::vector<double> alpha_;
    std::vector<double> grad_;
};

} // namespace

ClassifierModel train_svm(const std::vector<std::vector<std::int64_t>>& x, const std::vector<int>& y,
                          const SvmConfig& config, TrainStats* stats)
{
    if (x.size() != y.size())
        throw Error("svm: feature and label counts differ");
    if (!(config.c > 0.0))
        throw Error("svm: C must be positive");
    const std::size_t d = x.empty() ? 0 : x.front().size();
    for (const auto& row : x)
        if (row.size() != d)
            throw Error("svm: ragged feature matrix");

    const auto n_pos = static_cast<std::size_t>(std::count(y.begin(), y.end(), 1));
    const std::size_t n_neg = y.size() - n_pos;
    if (n_pos == 0 || n_neg == 0) {
        auto m = ClassifierModel::constant_model(n_pos > 0, d);
        m.kernel = config.kernel;
        m.c = config.c;
        m.seed = config.seed;
        return m;
    }

    ClassifierModel model;
    model.kernel = config.kernel;
    model.c = config.c;
    model.seed = config.seed;

    std::vector<std::vector<double>> raw(x.size(), std::vector<double>(d));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < d; ++j)
            raw[i][j] = static_cast<double>(x[i][j]);
    fit_standardization(raw, model.mean, model.scale);

    std::vector<std::vector<double>> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        z[i] = model.standardize(x[i]);

    if (config.gamma) {
        model.gamma = *config.gamma;
    } else {
        // 1 / (d * Var) with Var taken over every entry of the scaled matrix
        double sum = 0.0;
        double sq = 0.0;
        for (const auto& row : z)
            for (double v : row) {
                sum += v;
                sq += v * v;
            }
        const double count = static_cast<double>(z.size() * std::max<std::size_t>(d, 1));
        const double mean = sum / count;
        const double var = sq / count - mean * mean;
        model.gamma = (d > 0 && var > 1e-300) ? 1.0 / (static_cast<double>(d) * var) : 1.0;
    }

    const double w_pos = config.balance_classes ? static_cast<double>(y.size()) / (2.0 * static_cast<double>(n_pos)) : 1.0;
    const double w_neg = config.balance_classes ? static_cast<double>(y.size()) / (2.0 * static_cast<double>(n_neg)) : 1.0;

    // merge duplicates, keeping first-seen order
    std::map<std::pair<std::vector<std::int64_t>, int>, std::size_t> seen;
    std::vector<std::size_t> first_index;
    std::vector<int> labels;
    std::vector<double> upper;
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto [it, inserted] = seen.emplace(std::make_pair(x[i], y[i]), first_index.size());
        const double c = config.c * (y[i] == 1 ? w_pos : w_neg);
        if (inserted) {
            first_index.push_back(i);
            labels.push_back(y[i]);
            upper.push_back(c);
        } else {
            upper[it->second] += c;
        }
    }

    // seeded permutation of the working order
    std::vector<std::size_t> order(first_index.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::mt19937_64 rng(config.seed);
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng() % i]);

    std::vector<std::vector<double>> pts;
    std::vector<int> lab;
    std::vector<double> ub;
    for (std::size_t k : order) {
        pts.push_back(z[first_index[k]]);
        lab.push_back(labels[k]);
        ub.push_back(upper[k]);
    }

    Solver solver(pts, lab, ub, model.kernel, model.gamma);
    solver.solve(config.tolerance, config.max_iterations, stats);
    model.bias = -solver.rho();
    const auto& alpha = solver.alpha();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (alpha[i] > 0.0) {
            model.support_vectors.push_back(pts[i]);
            model.coefficients.push_back(alpha[i] * lab[i]);
        }
    }
    if (stats) {
        stats->alpha = alpha;
        stats->upper_bound = ub;
        stats->labels = lab;
        stats->points = pts;
    }
    return model;
}

} // namespace acdc::learn
