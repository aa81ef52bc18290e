#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace acdc::learn {

enum class KernelKind
{
    Rbf,
    Linear,
};

std::string_view to_string(KernelKind k);
std::optional<KernelKind> parse_kernel(std::string_view text);

struct SvmConfig
{
    KernelKind kernel = KernelKind::Rbf;
    double c = 1.0;
    std::optional<double> gamma; // default 1 / (d * Var) over standardized features
    double tolerance = 1e-3;
    std::uint64_t seed = 42;
    bool balance_classes = true;
    std::size_t max_iterations = 1'000'000;
};

// Label convention: +1 = NEGATE, -1 = DON'T-NEGATE.
struct ClassifierModel
{
    KernelKind kernel = KernelKind::Rbf;
    double gamma = 1.0;
    double c = 1.0;
    std::uint64_t seed = 42;
    std::vector<double> mean;
    std::vector<double> scale;

    // Non-constant models only.
    std::vector<std::vector<double>> support_vectors; // standardized
    std::vector<double> coefficients;                 // alpha_i * y_i
    double bias = 0.0;

    std::optional<bool> constant; // set for one-class training data

    [[nodiscard]] std::size_t dimension() const noexcept { return mean.size(); }
    [[nodiscard]] std::vector<double> standardize(std::span<const std::int64_t> features) const;
    [[nodiscard]] double decision_value(std::span<const std::int64_t> features) const;
    [[nodiscard]] bool negate(std::span<const std::int64_t> features) const;

    static ClassifierModel constant_model(bool negate, std::size_t dimension);

    friend bool operator==(const ClassifierModel&, const ClassifierModel&) = default;
};

struct TrainStats
{
    std::size_t iterations = 0;
    bool converged = true;
    double max_violation = 0.0;      // Gmax + Gmax2 at exit
    std::vector<double> objective;   // dual objective after each iteration
    std::vector<double> alpha;       // final multipliers, in deduplicated point order
    std::vector<double> upper_bound; // per-point box constraint
    std::vector<int> labels;
    std::vector<std::vector<double>> points; // standardized, deduplicated
};

// Fits per-dimension mean and population standard deviation; constant
// dimensions get scale 1.
void fit_standardization(const std::vector<std::vector<double>>& x, std::vector<double>& mean,
                         std::vector<double>& scale);

// Soft-margin kernel SVM solved by SMO with second-order working set
// selection. Duplicate points with the same label are merged and their box
// constraints summed, which leaves the optimum unchanged.
ClassifierModel train_svm(const std::vector<std::vector<std::int64_t>>& x, const std::vector<int>& y,
                          const SvmConfig& config = {}, TrainStats* stats = nullptr);

double kernel_value(KernelKind kind, double gamma, std::span<const double> a, std::span<const double> b);

} // namespace acdc::learn
