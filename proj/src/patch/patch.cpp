#include "acdc/patch/patch.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "acdc/lang/printer.hpp"
#include "acdc/learn/model_io.hpp"

namespace acdc::patch {

const PatchEntry* TrainedPatch::find(PredicateId p) const
{
    for (const auto& e : entries)
        if (e.predicate == p)
            return &e;
    return nullptr;
}

std::string digest_hex(std::uint64_t digest)
{
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, digest);
    return buf;
}

TrainedPatch build_patch(const runtime::Executor& executor, const search::Solution& solution,
                         const std::vector<learn::ClassifierModel>& models, Provenance provenance)
{
    if (solution.pairs.empty())
        throw Error("patch: the solution has no (predicate, pattern) pair");
    if (models.size() != solution.pairs.size())
        throw Error("patch: " + std::to_string(solution.pairs.size()) + " solution pairs but " +
                    std::to_string(models.size()) + " models");
    TrainedPatch patch;
    patch.program_digest = executor.program().source_digest;
    std::set<PredicateId> seen;
    for (std::size_t i = 0; i < models.size(); ++i) {
        const auto& pair = solution.pairs[i];
        if (!seen.insert(pair.predicate).second)
            throw Error("patch: predicate " + std::to_string(pair.predicate.value) + " appears twice");
        const auto& schema = executor.schema(pair.predicate);
        if (models[i].dimension() != schema.size())
            throw Error("patch: model for predicate " + std::to_string(pair.predicate.value) + " has " +
                        std::to_string(models[i].dimension()) + " features, schema has " +
                        std::to_string(schema.size()));
        patch.entries.push_back({pair.predicate, pair.pattern, schema.names(), models[i]});
    }
    provenance.pairs = solution.pairs;
    if (!provenance.scenario)
        provenance.scenario = solution.scenario;
    if (provenance.program_path.empty())
        provenance.program_path = executor.program().path;
    patch.provenance = std::move(provenance);
    return patch;
}

nlohmann::json patch_to_json(const TrainedPatch& patch)
{
    nlohmann::json j;
    j["format"] = "acdc-patch";
    j["version"] = kPatchFormatVersion;
    j["program_digest"] = digest_hex(patch.program_digest);
    auto entries = nlohmann::json::array();
    for (const auto& e : patch.entries) {
        nlohmann::json je;
        je["predicate"] = e.predicate.value;
        je["pattern"] = std::string(search::to_string(e.pattern));
        je["features"] = e.features;
        je["model"] = learn::model_to_json(e.model);
        entries.push_back(std::move(je));
    }
    j["entries"] = std::move(entries);
    nlohmann::json prov;
    auto pairs = nlohmann::json::array();
    for (const auto& p : patch.provenance.pairs)
        pairs.push_back({{"predicate", p.predicate.value}, {"pattern", std::string(search::to_string(p.pattern))}});
    prov["pairs"] = std::move(pairs);
    prov["scenario"] = patch.provenance.scenario ? nlohmann::json(static_cast<int>(*patch.provenance.scenario))
                                                 : nlohmann::json(nullptr);
    prov["training_fraction"] = learn::encode_double(patch.provenance.training_fraction);
    prov["seed"] = std::to_string(patch.provenance.seed);
    prov["tool_version"] = patch.provenance.tool_version;
    prov["program_path"] = patch.provenance.program_path;
    j["provenance"] = std::move(prov);
    return j;
}

namespace {

search::Pattern pattern_field(const nlohmann::json& j)
{
    const auto p = search::parse_pattern(j.get<std::string>());
    if (!p)
        throw Error("patch: unknown pattern " + j.dump());
    return *p;
}

} // namespace

TrainedPatch patch_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || j.value("format", std::string()) != "acdc-patch")
        throw Error("patch: not an acdc patch file");
    if (!j.contains("version") || !j.at("version").is_number_integer())
        throw Error("patch: missing format version");
    const int version = j.at("version").get<int>();
    if (version != kPatchFormatVersion)
        throw Error("patch: unsupported format version " + std::to_string(version) + " (expected " +
                    std::to_string(kPatchFormatVersion) + ")");
    if (!j.contains("program_digest") || !j.at("program_digest").is_string())
        throw Error("patch: program digest is missing");
    try {
        TrainedPatch patch;
        const std::string hex = j.at("program_digest").get<std::string>();
        std::size_t used = 0;
        patch.program_digest = std::stoull(hex, &used, 16);
        if (used != hex.size() || hex.size() != 16)
            throw Error("patch: malformed program digest '" + hex + "'");
        std::set<PredicateId> seen;
        for (const auto& je : j.at("entries")) {
            PatchEntry e;
            e.predicate = PredicateId(je.at("predicate").get<std::int32_t>());
            if (!seen.insert(e.predicate).second)
                throw Error("patch: predicate " + std::to_string(e.predicate.value) + " appears twice");
            e.pattern = pattern_field(je.at("pattern"));
            e.features = je.at("features").get<std::vector<std::string>>();
            e.model = learn::model_from_json(je.at("model"));
            if (e.model.dimension() != e.features.size())
                throw Error("patch: model dimension disagrees with its feature list");
            patch.entries.push_back(std::move(e));
        }
        if (patch.entries.empty())
            throw Error("patch: no entries");
        const auto& prov = j.at("provenance");
        for (const auto& p : prov.at("pairs"))
            patch.provenance.pairs.push_back(
                {PredicateId(p.at("predicate").get<std::int32_t>()), pattern_field(p.at("pattern"))});
        if (!prov.at("scenario").is_null())
            patch.provenance.scenario = static_cast<search::Scenario>(prov.at("scenario").get<int>());
        patch.provenance.training_fraction = learn::decode_double(prov.at("training_fraction"));
        patch.provenance.seed = std::stoull(prov.at("seed").get<std::string>());
        patch.provenance.tool_version = prov.at("tool_version").get<std::string>();
        patch.provenance.program_path = prov.at("program_path").get<std::string>();
        return patch;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("patch: malformed file: ") + e.what());
    } catch (const std::logic_error& e) {
        throw Error(std::string("patch: malformed file: ") + e.what());
    }
}

std::string serialize_patch(const TrainedPatch& patch)
{
    return patch_to_json(patch).dump(2) + "\n";
}

void save_patch(const TrainedPatch& patch, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("patch: cannot write " + path.string());
    out << serialize_patch(patch);
    if (!out)
        throw Error("patch: write failed for " + path.string());
}

TrainedPatch load_patch(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("patch: cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
        throw Error("patch: malformed file " + path.string() + ": " + e.what());
    }
    return patch_from_json(j);
}

std::vector<PredicateId> PatchOracle::predicates() const
{
    std::vector<PredicateId> out;
    for (const auto& e : patch_->entries)
        out.push_back(e.predicate);
    return out;
}

bool PatchOracle::negate(PredicateId p, std::int64_t, std::span<const std::int64_t> features) const
{
    const PatchEntry* e = patch_->find(p);
    return e != nullptr && e->model.negate(features);
}

namespace {

class OracleHook : public runtime::NegationHook
{
  public:
    OracleHook(const Oracle& oracle, std::size_t predicate_count) : oracle_(oracle), patched_(predicate_count, 0)
    {
        for (PredicateId p : oracle.predicates())
            patched_.at(p.index()) = 1;
    }

    [[nodiscard]] bool wants_state(PredicateId p) const override { return patched_[p.index()] != 0; }

    bool should_negate(PredicateId p, std::int64_t occurrence, std::span<const std::int64_t> features) override
    {
        return patched_[p.index()] != 0 && oracle_.negate(p, occurrence, features);
    }

  private:
    const Oracle& oracle_;
    std::vector<char> patched_;
};

} // namespace

runtime::ExecutionResult execute_with_oracle(const runtime::Executor& executor, const lang::TestCase& test,
                                             const Oracle& oracle, const runtime::ExecConfig& config)
{
    runtime::ExecConfig cfg = config;
    for (PredicateId p : oracle.predicates())
        if (std::find(cfg.snapshot_predicates.begin(), cfg.snapshot_predicates.end(), p) ==
            cfg.snapshot_predicates.end())
            cfg.snapshot_predicates.push_back(p);
    OracleHook hook(oracle, executor.program().predicates.size());
    return executor.execute_with_hook(test, &hook, cfg);
}

runtime::ExecutionResult execute_with_oracle(const runtime::Executor& executor, const lang::TestCase& test,
                                             const TrainedPatch& patch, const runtime::ExecConfig& config)
{
    if (patch.program_digest != executor.program().source_digest)
        throw DigestMismatchError("patch was trained on program " + digest_hex(patch.program_digest) +
                                  " but this program is " + digest_hex(executor.program().source_digest));
    for (const auto& e : patch.entries)
        if (e.predicate.index() >= executor.program().predicates.size())
            throw Error("patch: predicate " + std::to_string(e.predicate.value) + " does not exist");
    return execute_with_oracle(executor, test, PatchOracle(patch), config);
}

std::string emit_patched_source(const lang::Program& program, const search::Solution& solution)
{
    if (solution.pairs.empty())
        throw Error("patch: the solution has no (predicate, pattern) pair");
    struct Edit
    {
        std::size_t begin;
        std::size_t end;
        std::string text;
    };
    std::vector<Edit> edits;
    for (const auto& pair : solution.pairs) {
        const auto& pred = program.predicate(pair.predicate);
        const lang::Stmt* stmt = program.statement(pred.statement).node;
        std::string text = "(" + lang::print_expr(*stmt->cond) + ") XOR shouldNegate(" +
                           std::to_string(pair.predicate.value) + ") /* acdc pattern: " +
                           std::string(search::to_string(pair.pattern)) + " */";
        edits.push_back({stmt->cond_span.begin.offset, stmt->cond_span.end_offset, std::move(text)});
    }
    std::sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) { return a.begin > b.begin; });
    std::string out = program.source;
    for (const auto& e : edits)
        out.replace(e.begin, e.end - e.begin, e.text);
    return out;
}

} // namespace acdc::patch
