#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "acdc/error.hpp"
#include "acdc/lang/parser.hpp"
#include "acdc/learn/model_io.hpp"
#include "acdc/learn/svm.hpp"
#include "acdc/patch/patch.hpp"
#include "acdc/runtime/interpreter.hpp"

using namespace acdc;
namespace fs = std::filesystem;

namespace {

const char* kMax = R"(func main(a: int, b: int) {
    if (a < b) {
        print(a);
    } else {
        print(b);
    }
}
)";

const char* kFive = R"(func main(a: int, b: int) {
    if (a > 0) { print(1); }
    if (b > 0) { print(2); }
    if (a > b) { print(3); }
    if (a == b) { print(4); }
    if (a + b > 10) { print(5); }
    print(0);
}
)";

search::Solution solution_for(std::vector<int> preds, search::Pattern pattern = search::Pattern::All)
{
    search::Solution s;
    for (int p : preds) {
        s.pairs.push_back({PredicateId(p), pattern});
        s.pair_fixed.push_back({0});
    }
    s.fixed = {0};
    s.completeness = search::Completeness::Full;
    return s;
}

std::vector<learn::ClassifierModel> constant_models(const runtime::Executor& ex, const search::Solution& s,
                                                    bool negate)
{
    std::vector<learn::ClassifierModel> out;
    for (const auto& pair : s.pairs)
        out.push_back(learn::ClassifierModel::constant_model(negate, ex.schema(pair.predicate).size()));
    return out;
}

fs::path temp_file(const std::string& name)
{
    return fs::temp_directory_path() / ("acdc_unit_" + std::to_string(::getpid()) + "_" + name);
}

// Memorizes a negation plan and answers by (predicate, occurrence) alone.
class LookupOracle : public patch::Oracle
{
  public:
    explicit LookupOracle(runtime::NegationPlan plan) : plan_(std::move(plan)) {}
    std::vector<PredicateId> predicates() const override
    {
        std::vector<PredicateId> out;
        for (const auto& [p, _] : plan_.entries)
            out.push_back(p);
        return out;
    }
    bool negate(PredicateId p, std::int64_t occ, std::span<const std::int64_t>) const override
    {
        auto it = plan_.entries.find(p);
        return it != plan_.entries.end() && it->second.contains(occ);
    }

  private:
    runtime::NegationPlan plan_;
};

} // namespace

TEST(BuildPatch, EntriesFollowPairs)
{
    const auto p = lang::parse(kMax);
    const runtime::Executor ex(p);
    const auto one = solution_for({0});
    const auto patch = patch::build_patch(ex, one, constant_models(ex, one, true));
    ASSERT_EQ(patch.entries.size(), 1u);
    EXPECT_EQ(patch.program_digest, p.source_digest);
    EXPECT_EQ(patch.entries[0].features, (std::vector<std::string>{"a", "b"}));

    const auto q = lang::parse(kFive);
    const runtime::Executor ey(q);
    const auto five = solution_for({0, 1, 2, 3, 4});
    EXPECT_EQ(patch::build_patch(ey, five, constant_models(ey, five, false)).entries.size(), 5u);

    EXPECT_THROW(patch::build_patch(ey, five, constant_models(ey, solution_for({0}), false)), Error);
    EXPECT_THROW(patch::build_patch(ey, solution_for({}), {}), Error);
    std::vector<learn::ClassifierModel> wrong{learn::ClassifierModel::constant_model(true, 7)};
    EXPECT_THROW(patch::build_patch(ex, one, wrong), Error);
}

TEST(PatchFile, RoundTripKeepsEveryDecision)
{
    const auto p = lang::parse(kMax);
    const runtime::Executor ex(p);
    const std::vector<std::vector<std::int64_t>> x{{1, 2}, {3, 5}, {0, 9}, {4, 4}, {7, 1}, {9, 3}};
    const auto model = learn::train_svm(x, {1, 1, 1, -1, -1, -1});
    const auto sol = solution_for({0});
    patch::Provenance prov;
    prov.pairs = sol.pairs;
    prov.scenario = search::Scenario::AlwaysNegate;
    prov.training_fraction = 0.4;
    prov.seed = 1234567890123ull;
    const auto original = patch::build_patch(ex, sol, {model}, prov);
    const auto path = temp_file("roundtrip.patch.json");
    patch::save_patch(original, path);
    const auto loaded = patch::load_patch(path);
    fs::remove(path);

    EXPECT_EQ(patch::serialize_patch(loaded), patch::serialize_patch(original));
    EXPECT_EQ(loaded.provenance.seed, prov.seed);
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<std::int64_t> u(-1000, 1000);
    const patch::PatchOracle a(original), b(loaded);
    for (int i = 0; i < 1000; ++i) {
        const std::vector<std::int64_t> f{u(rng), u(rng)};
        ASSERT_EQ(a.negate(PredicateId(0), 1, f), b.negate(PredicateId(0), 1, f));
        ASSERT_EQ(original.entries[0].model.decision_value(f), loaded.entries[0].model.decision_value(f));
    }
}

TEST(PatchFile, RejectsOtherVersionsAndGarbage)
{
    const auto p = lang::parse(kMax);
    const runtime::Executor ex(p);
    const auto sol = solution_for({0});
    auto j = patch::patch_to_json(patch::build_patch(ex, sol, constant_models(ex, sol, true)));
    j["version"] = 2;
    try {
        patch::patch_from_json(j);
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
    }
    EXPECT_THROW(patch::patch_from_json(nlohmann::json::parse(R"({"format":"other"})")), Error);
    EXPECT_THROW(patch::load_patch(temp_file("missing.json")), Error);
}

TEST(PatchRun, DigestMismatchIsRefused)
{
    const auto p = lang::parse(kMax);
    const runtime::Executor ex(p);
    const auto sol = solution_for({0});
    const auto patch = patch::build_patch(ex, sol, constant_models(ex, sol, true));
    std::string mutated = kMax;
    mutated[mutated.find("print(a)")] = 'p'; // same text
    mutated.back() = ' ';                    // one byte differs
    const auto q = lang::parse(mutated);
    const runtime::Executor ey(q);
    EXPECT_THROW(patch::execute_with_oracle(ey, {{1, 2}, "2\n"}, patch), patch::DigestMismatchError);
    EXPECT_NO_THROW(patch::execute_with_oracle(ex, {{1, 2}, "2\n"}, patch));
}

TEST(PatchRun, ConstantModelsMatchPlainAndAllPlans)
{
    const auto p = lang::parse(kFive);
    const runtime::Executor ex(p);
    const auto sol = solution_for({0, 2, 4});
    const auto keep = patch::build_patch(ex, sol, constant_models(ex, sol, false));
    const auto flip = patch::build_patch(ex, sol, constant_models(ex, sol, true));
    runtime::NegationPlan all;
    for (int q : {0, 2, 4})
        all.entries[PredicateId(q)] = runtime::OccurrenceSet::all();
    for (std::int64_t a = -2; a <= 8; a += 3)
        for (std::int64_t b = -1; b <= 9; b += 4) {
            const lang::TestCase t{{a, b}, ""};
            EXPECT_EQ(patch::execute_with_oracle(ex, t, keep).output, ex.execute(t).output);
            EXPECT_EQ(patch::execute_with_oracle(ex, t, flip).output, ex.execute_with_negation(t, all).output);
        }
}

TEST(PatchRun, LookupOracleMatchesNegationPlan)
{
    const auto p = lang::parse(R"(func main(n: int) {
    var i: int = 0;
    var s: int = 0;
    while (i < n) {
        if (i % 3 == 1) {
            s = s + i;
        }
        i = i + 1;
    }
    print(s);
}
)");
    const runtime::Executor ex(p);
    runtime::ExecConfig cfg;
    cfg.step_budget = 20000;
    std::mt19937_64 rng(6);
    for (int round = 0; round < 100; ++round) {
        runtime::NegationPlan plan;
        for (int q = 0; q < 2; ++q) {
            if (rng() % 2)
                continue;
            std::vector<std::int64_t> idx;
            for (std::int64_t i = 1; i <= 8; ++i)
                if (rng() % 3 == 0)
                    idx.push_back(i);
            plan.entries[PredicateId(q)] = runtime::OccurrenceSet::of(idx);
        }
        const lang::TestCase t{{static_cast<std::int64_t>(rng() % 7)}, ""};
        const auto want = ex.execute_with_negation(t, plan, cfg);
        const auto got = patch::execute_with_oracle(ex, t, LookupOracle(plan), cfg);
        ASSERT_EQ(got.output, want.output);
        ASSERT_EQ(got.failure_kind, want.failure_kind);
    }
}

TEST(EmitSource, RewritesOnlyPatchedConditions)
{
    const auto p = lang::parse(kMax);
    const auto text = patch::emit_patched_source(p, solution_for({0}));
    EXPECT_NE(text.find("(a < b) XOR shouldNegate(0) /* acdc pattern: all */"), std::string::npos);

    const auto q = lang::parse(kFive);
    const auto two = patch::emit_patched_source(q, solution_for({1, 3}, search::Pattern::First));
    std::string restored = two;
    for (const auto& [cond, id] : {std::pair<std::string, int>{"b > 0", 1}, {"a == b", 3}}) {
        const std::string rewritten =
            "(" + cond + ") XOR shouldNegate(" + std::to_string(id) + ") /* acdc pattern: first */";
        const auto at = restored.find(rewritten);
        ASSERT_NE(at, std::string::npos);
        restored.replace(at, rewritten.size(), cond);
    }
    EXPECT_EQ(restored, q.source);
    EXPECT_EQ(std::count(two.begin(), two.end(), '^') + 0, 0);
    EXPECT_THROW(patch::emit_patched_source(q, solution_for({})), Error);
}
