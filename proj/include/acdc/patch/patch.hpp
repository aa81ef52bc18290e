#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "acdc/error.hpp"
#include "acdc/learn/svm.hpp"
#include "acdc/runtime/interpreter.hpp"
#include "acdc/search/search.hpp"

namespace acdc::patch {

inline constexpr int kPatchFormatVersion = 1;
inline constexpr std::string_view kToolVersion = "0.3.0";

struct PatchEntry
{
    PredicateId predicate;
    search::Pattern pattern = search::Pattern::All; // labels the model was trained from
    std::vector<std::string> features;
    learn::ClassifierModel model;
};

struct Provenance
{
    std::vector<search::SolutionPair> pairs;
    std::optional<search::Scenario> scenario;
    double training_fraction = 1.0;
    std::uint64_t seed = 42;
    std::string tool_version = std::string(kToolVersion);
    std::string program_path;
};

struct TrainedPatch
{
    std::uint64_t program_digest = 0;
    std::vector<PatchEntry> entries;
    Provenance provenance;

    [[nodiscard]] const PatchEntry* find(PredicateId p) const;
};

// One model per solution pair, in pair order. Throws acdc::Error on a count
// mismatch, an empty solution, or a model whose dimension disagrees with the
// predicate's feature schema.
TrainedPatch build_patch(const runtime::Executor& executor, const search::Solution& solution,
                         const std::vector<learn::ClassifierModel>& models, Provenance provenance = {});

nlohmann::json patch_to_json(const TrainedPatch& patch);
TrainedPatch patch_from_json(const nlohmann::json& j);
std::string serialize_patch(const TrainedPatch& patch);

void save_patch(const TrainedPatch& patch, const std::filesystem::path& path);
TrainedPatch load_patch(const std::filesystem::path& path);

std::string digest_hex(std::uint64_t digest);

// Decides, per predicate evaluation, whether to invert it.
class Oracle
{
  public:
    virtual ~Oracle() = default;
    [[nodiscard]] virtual std::vector<PredicateId> predicates() const = 0;
    [[nodiscard]] virtual bool negate(PredicateId p, std::int64_t occurrence,
                                      std::span<const std::int64_t> features) const = 0;
};

class PatchOracle : public Oracle
{
  public:
    explicit PatchOracle(const TrainedPatch& patch) : patch_(&patch) {}
    [[nodiscard]] std::vector<PredicateId> predicates() const override;
    [[nodiscard]] bool negate(PredicateId p, std::int64_t occurrence,
                              std::span<const std::int64_t> features) const override;

  private:
    const TrainedPatch* patch_;
};

class DigestMismatchError : public Error
{
  public:
    using Error::Error;
};

// Runs a test consulting `oracle` before every evaluation of its predicates;
// snapshots of those predicates record each decision.
runtime::ExecutionResult execute_with_oracle(const runtime::Executor& executor, const lang::TestCase& test,
                                             const Oracle& oracle, const runtime::ExecConfig& config = {});

// Same, for a trained patch. Throws DigestMismatchError if the patch was
// trained on a different program text.
runtime::ExecutionResult execute_with_oracle(const runtime::Executor& executor, const lang::TestCase& test,
                                             const TrainedPatch& patch, const runtime::ExecConfig& config = {});

// The original source with each patched condition rewritten as
// `(<cond>) XOR shouldNegate(<id>)` and a comment naming its pattern.
std::string emit_patched_source(const lang::Program& program, const search::Solution& solution);

} // namespace acdc::patch
