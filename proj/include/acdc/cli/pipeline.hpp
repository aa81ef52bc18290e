#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "acdc/cli/corpus.hpp"
#include "acdc/learn/evaluate.hpp"
#include "acdc/localize/localizer.hpp"
#include "acdc/search/search.hpp"

namespace acdc::cli {

inline const std::vector<double> kDefaultFractions = {0.05, 0.10, 0.20, 0.40, 0.80, 1.0};

enum class LastStage
{
    Localize,
    Search,
    Train,
    Evaluate,
};

struct PipelineConfig
{
    LastStage last_stage = LastStage::Evaluate;
    std::uint64_t seed = 42;
    int jobs = 1;
    runtime::ExecConfig exec;
    localize::LocalizeConfig localize;
    learn::SvmConfig svm;
    std::vector<double> fractions = kDefaultFractions;
    std::optional<std::filesystem::path> output_dir; // patch and patched source are written here
};

// An error raised by one pipeline stage; the message names the stage.
class StageError : public Error
{
  public:
    StageError(std::string stage, const std::string& message)
        : Error(stage + ": " + message), stage_(std::move(stage))
    {
    }
    [[nodiscard]] const std::string& stage() const noexcept { return stage_; }

  private:
    std::string stage_;
};

enum class Outcome
{
    Full,
    Partial,
    None,
};

std::string_view to_string(Outcome o);
int exit_code(Outcome o); // 0 FULL, 2 PARTIAL, 3 none

// Program, suite and baseline bound together for the per-stage subcommands.
struct Subject
{
    std::string name;
    lang::Program program;
    lang::TestSuite suite;
    std::optional<PredicateId> buggy_predicate;
    std::optional<search::Scenario> expected_scenario;
};

Subject load_subject(const CorpusEntry& entry);
Subject load_subject(const std::filesystem::path& program, const std::filesystem::path& suite);

struct FractionResult
{
    double fraction = 0.0;
    std::optional<learn::AccuracyReport> report;
    std::string error;
};

struct PipelineReport
{
    std::string name;
    Outcome outcome = Outcome::None;
    nlohmann::json json; // full stage-by-stage report
    std::vector<search::Solution> solutions;
    std::optional<std::size_t> chosen;
    std::vector<localize::SuspiciousPredicate> predicates;
    std::vector<FractionResult> accuracies;
    std::optional<patch::TrainedPatch> patch;
    std::optional<PredicateId> buggy_predicate;
    std::optional<search::Scenario> expected_scenario;
};

// Seed for one derived randomized step, stable across runs and platforms.
std::uint64_t derive_seed(std::uint64_t base, std::string_view label, std::uint64_t index);

// localize -> search -> collect -> train -> patch -> evaluate. Throws
// StageError when a stage cannot run.
PipelineReport run_pipeline(const Subject& subject, const PipelineConfig& config);
PipelineReport run_pipeline(const CorpusEntry& entry, const PipelineConfig& config);

// Stage-level JSON fragments shared by the subcommands.
nlohmann::json localization_json(const lang::Program& program, const localize::LocalizationReport& report);
nlohmann::json solution_json(const search::Solution& solution);
nlohmann::json accuracy_json(const FractionResult& r);

// Newline-delimited JSON: one header line per run, then its events and
// snapshots.
void write_trace_ndjson(std::ostream& out, int test, const runtime::ExecutionResult& result);

} // namespace acdc::cli
