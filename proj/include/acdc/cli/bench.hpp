#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "acdc/cli/pipeline.hpp"

namespace acdc::cli {

// One corpus entry as it appears in the benchmark summary.
struct EntryRow
{
    std::string name;
    std::string outcome; // FULL, PARTIAL, NONE or ERROR
    std::string error;
    std::optional<int> buggy_predicate;
    std::optional<bool> buggy_in_pred_list;
    std::optional<int> expected_scenario;
    std::optional<int> scenario;
    std::size_t full_solutions = 0;
    std::size_t partial_solutions = 0;
    std::vector<std::string> chosen_patterns;
    std::map<std::string, int> pattern_counts; // over every reported solution
    std::vector<std::pair<double, std::optional<double>>> accuracies;
};

EntryRow make_row(const PipelineReport& report);
EntryRow row_from_json(const nlohmann::json& j);
nlohmann::json row_to_json(const EntryRow& row);

struct FractionStats
{
    double fraction = 0.0;
    std::size_t count = 0;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
};

struct BenchmarkSummary
{
    std::vector<EntryRow> rows;
    std::size_t full = 0;
    std::size_t partial = 0;
    std::size_t none = 0;
    std::size_t errors = 0;
    std::size_t buggy_known = 0;
    std::size_t buggy_in_pred_list = 0;
    std::size_t scenario_expected = 0;
    std::size_t scenario_correct = 0;
    std::map<std::string, int> pattern_histogram;
    std::map<int, int> scenario_distribution; // chosen solutions only
    std::vector<FractionStats> accuracy;
};

// Pure aggregation over rows.
BenchmarkSummary aggregate(std::vector<EntryRow> rows);

// Runs every entry of `dir` (in parallel up to config.jobs); a failing entry
// becomes an ERROR row.
BenchmarkSummary run_benchmark(const std::filesystem::path& dir, const PipelineConfig& config);

nlohmann::json summary_to_json(const BenchmarkSummary& summary);
BenchmarkSummary summary_from_json(const nlohmann::json& j);

std::string entries_csv(const BenchmarkSummary& summary);
std::string pattern_csv(const BenchmarkSummary& summary);
std::string scenario_csv(const BenchmarkSummary& summary);
std::string accuracy_csv(const BenchmarkSummary& summary);

} // namespace acdc::cli
