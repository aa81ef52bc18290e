#include "acdc/cli/pipeline.hpp"

#include <fstream>

#include "acdc/lang/parser.hpp"
#include "acdc/learn/model_io.hpp"

namespace acdc::cli {

std::string_view to_string(Outcome o)
{
    switch (o) {
    case Outcome::Full:
        return "FULL";
    case Outcome::Partial:
        return "PARTIAL";
    case Outcome::None:
        return "NONE";
    }
    return "?";
}

int exit_code(Outcome o)
{
    switch (o) {
    case Outcome::Full:
        return 0;
    case Outcome::Partial:
        return 2;
    case Outcome::None:
        return 3;
    }
    return 1;
}

Subject load_subject(const std::filesystem::path& program, const std::filesystem::path& suite)
{
    Subject s;
    s.name = program.stem().string();
    try {
        s.program = lang::parse_file(program.string());
    } catch (const Error& e) {
        throw StageError("parse", e.what());
    }
    try {
        s.suite = load_suite(suite);
    } catch (const Error& e) {
        throw StageError("suite", e.what());
    }
    return s;
}

Subject load_subject(const CorpusEntry& entry)
{
    Subject s = load_subject(entry.program, entry.suite);
    s.name = entry.name;
    s.buggy_predicate = entry.buggy_predicate;
    s.expected_scenario = entry.expected_scenario;
    return s;
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view label, std::uint64_t index)
{
    std::uint64_t z = base ^ lang::fnv1a64(label);
    z += 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

nlohmann::json chain_json(const graphs::Chain& c)
{
    auto nodes = nlohmann::json::array();
    for (StatementId s : c.nodes)
        nodes.push_back(s.value);
    return nodes;
}

} // namespace

nlohmann::json localization_json(const lang::Program& program, const localize::LocalizationReport& report)
{
    nlohmann::json j;
    const auto& loc = report.localized;
    j["stop"] = std::string(localize::to_string(loc.stop));
    if (!loc.infeasible_reason.empty())
        j["infeasible_reason"] = loc.infeasible_reason;
    j["length"] = loc.length;
    j["sharing_rule"] = "chain kept only if one of its statements runs in some passing test";
    j["scope"] = "intraprocedural chains";
    auto lengths = nlohmann::json::array();
    for (const auto& l : loc.lengths)
        lengths.push_back({{"length", l.length},
                           {"enumerated", l.enumerated},
                           {"scored", l.scored},
                           {"discarded", l.discarded},
                           {"perfect", l.perfect}});
    j["lengths"] = std::move(lengths);
    auto chains = nlohmann::json::array();
    for (const auto& c : loc.chains)
        chains.push_back({{"nodes", chain_json(c.chain)}, {"m", nlohmann::json(c.m)}, {"a_ef", c.a_ef}, {"a_ep", c.a_ep}});
    j["chains"] = std::move(chains);
    auto fits = nlohmann::json::array();
    for (const auto& f : report.fits) {
        nlohmann::json jf{{"statement", f.statement.value},
                          {"line", program.statement(f.statement).span.begin.line},
                          {"alpha", nlohmann::json(f.alpha)},
                          {"tau", nlohmann::json(f.tau)},
                          {"degenerate", f.degenerate}};
        jf["beta"] = f.beta ? nlohmann::json(*f.beta) : nlohmann::json(nullptr);
        fits.push_back(std::move(jf));
    }
    j["tau"] = std::move(fits);
    auto top = nlohmann::json::array();
    for (const auto& r : report.refined.top)
        top.push_back({{"nodes", chain_json(r.score.chain)}, {"m", nlohmann::json(r.score.m)}, {"max_tau", nlohmann::json(r.max_tau)}});
    j["top_chains"] = std::move(top);
    auto preds = nlohmann::json::array();
    for (const auto& p : report.refined.predicates)
        preds.push_back({{"predicate", p.predicate.value},
                         {"statement", p.statement.value},
                         {"line", program.statement(p.statement).span.begin.line},
                         {"tau", nlohmann::json(p.tau)}});
    j["pred_list"] = std::move(preds);
    return j;
}

nlohmann::json solution_json(const search::Solution& s)
{
    nlohmann::json j;
    auto pairs = nlohmann::json::array();
    for (std::size_t i = 0; i < s.pairs.size(); ++i) {
        nlohmann::json p{{"predicate", s.pairs[i].predicate.value},
                         {"pattern", std::string(search::to_string(s.pairs[i].pattern))}};
        if (i < s.pair_fixed.size())
            p["fixed"] = s.pair_fixed[i];
        pairs.push_back(std::move(p));
    }
    j["pairs"] = std::move(pairs);
    j["fixed"] = s.fixed;
    j["completeness"] = std::string(search::to_string(s.completeness));
    j["scenario"] = s.scenario ? nlohmann::json(static_cast<int>(*s.scenario)) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json accuracy_json(const FractionResult& r)
{
    nlohmann::json j{{"fraction", r.fraction}};
    if (!r.report) {
        j["error"] = r.error;
        return j;
    }
    const auto& a = *r.report;
    j["seed"] = std::to_string(a.seed);
    j["training"] = a.training_size;
    j["testing"] = a.testing_size;
    j["failing_tested"] = a.failing_tested;
    j["failing_fixed"] = a.failing_fixed;
    j["passing_tested"] = a.passing_tested;
    j["passing_intact"] = a.passing_intact;
    j["accuracy"] = a.accuracy;
    return j;
}

PipelineReport run_pipeline(const CorpusEntry& entry, const PipelineConfig& config)
{
    return run_pipeline(load_subject(entry), config);
}

PipelineReport run_pipeline(const Subject& subject, const PipelineConfig& config)
{
    PipelineReport report;
    report.name = subject.name;
    report.buggy_predicate = subject.buggy_predicate;
    report.expected_scenario = subject.expected_scenario;
    const lang::Program& program = subject.program;
    const runtime::Executor executor(program);

    nlohmann::json& j = report.json;
    j["name"] = subject.name;
    j["program"] = program.path;
    j["digest"] = patch::digest_hex(program.source_digest);
    j["predicates"] = program.predicates.size();

    lang::TestSuite suite = subject.suite;
    localize::SuiteProfile profile;
    try {
        profile = localize::collect_profiles(executor, suite, config.exec, config.jobs);
    } catch (const Error& e) {
        throw StageError("baseline", e.what());
    }
    suite.verdicts = profile.verdicts;
    const auto failing = suite.failing();
    j["tests"] = {{"total", suite.cases.size()}, {"failing", failing.size()}, {"passing", suite.passing().size()}};

    localize::LocalizationReport loc;
    try {
        loc = localize::run_localization(executor, profile, config.localize);
    } catch (const Error& e) {
        throw StageError("localize", e.what());
    }
    j["localize"] = localization_json(program, loc);
    report.predicates = loc.refined.predicates;
    if (subject.buggy_predicate) {
        const bool found = std::any_of(report.predicates.begin(), report.predicates.end(),
                                       [&](const auto& p) { return p.predicate == *subject.buggy_predicate; });
        j["buggy_predicate"] = subject.buggy_predicate->value;
        j["buggy_in_pred_list"] = found;
    }

    if (config.last_stage == LastStage::Localize)
        return report;

    const auto occurrences = search::OccurrenceTable::from_profile(profile);
    search::SearchOutcome found;
    try {
        search::SearchConfig sc;
        sc.exec = config.exec;
        sc.jobs = config.jobs;
        found = search::search_repairs(executor, suite, report.predicates, occurrences, sc);
    } catch (const Error& e) {
        throw StageError("search", e.what());
    }
    report.solutions = found.solutions;
    auto sols = nlohmann::json::array();
    nlohmann::json histogram = nlohmann::json::object();
    for (search::Pattern p : search::kPatterns)
        histogram[std::string(search::to_string(p))] = 0;
    for (const auto& s : found.solutions) {
        sols.push_back(solution_json(s));
        for (const auto& pair : s.pairs)
            histogram[std::string(search::to_string(pair.pattern))] =
                histogram[std::string(search::to_string(pair.pattern))].get<int>() + 1;
    }
    j["search"] = {{"solutions", std::move(sols)}, {"pattern_histogram", std::move(histogram)}};
    if (found.multiple)
        j["search"]["greedy"] = solution_json(*found.multiple);

    nlohmann::json dist = nlohmann::json::object();
    for (const auto& s : found.solutions)
        if (s.scenario) {
            const std::string key = std::to_string(static_cast<int>(*s.scenario));
            dist[key] = dist.value(key, 0) + 1;
        }
    j["search"]["scenario_distribution"] = std::move(dist);

    if (found.solutions.empty()) {
        report.outcome = Outcome::None;
        j["outcome"] = std::string(to_string(report.outcome));
        j["exit_code"] = exit_code(report.outcome);
        j["chosen"] = nullptr;
        return report;
    }
    report.chosen = 0;
    const search::Solution& chosen = found.solutions.front();
    report.outcome = chosen.completeness == search::Completeness::Full ? Outcome::Full : Outcome::Partial;
    j["chosen"] = solution_json(chosen);
    if (subject.expected_scenario) {
        j["expected_scenario"] = static_cast<int>(*subject.expected_scenario);
        j["scenario_correct"] = chosen.scenario == subject.expected_scenario;
    }

    if (config.last_stage == LastStage::Search) {
        j["outcome"] = std::string(to_string(report.outcome));
        j["exit_code"] = exit_code(report.outcome);
        return report;
    }

    learn::TrainConfig tc;
    tc.svm = config.svm;
    tc.exec = config.exec;
    tc.jobs = config.jobs;
    tc.svm.seed = derive_seed(config.seed, subject.name, 0);
    patch::TrainedPatch trained;
    try {
        std::vector<int> all(suite.cases.size());
        for (std::size_t i = 0; i < all.size(); ++i)
            all[i] = static_cast<int>(i);
        trained = learn::train_patch(executor, suite, all, chosen, occurrences, tc, 1.0);
    } catch (const Error& e) {
        throw StageError("train", e.what());
    }
    if (config.output_dir) {
        try {
            std::filesystem::create_directories(*config.output_dir);
            const auto patch_path = *config.output_dir / (subject.name + ".patch.json");
            patch::save_patch(trained, patch_path);
            const auto source_path = *config.output_dir / (subject.name + ".patched.acdc");
            std::ofstream(source_path, std::ios::binary) << patch::emit_patched_source(program, chosen);
            j["patch_path"] = patch_path.string();
            j["patched_source_path"] = source_path.string();
        } catch (const std::exception& e) {
            throw StageError("patch", e.what());
        }
    }

    report.patch = trained;
    if (config.last_stage == LastStage::Train) {
        j["outcome"] = std::string(to_string(report.outcome));
        j["exit_code"] = exit_code(report.outcome);
        return report;
    }

    auto accs = nlohmann::json::array();
    for (std::size_t k = 0; k < config.fractions.size(); ++k) {
        FractionResult r;
        r.fraction = config.fractions[k];
        try {
            r.report = learn::evaluate(executor, suite, chosen, occurrences, r.fraction,
                                       derive_seed(config.seed, subject.name, k + 1), tc);
        } catch (const Error& e) {
            r.error = e.what();
        }
        accs.push_back(accuracy_json(r));
        report.accuracies.push_back(std::move(r));
    }
    j["evaluation"] = std::move(accs);
    j["outcome"] = std::string(to_string(report.outcome));
    j["exit_code"] = exit_code(report.outcome);
    return report;
}

void write_trace_ndjson(std::ostream& out, int test, const runtime::ExecutionResult& result)
{
    out << nlohmann::json{{"type", "run"},
                          {"test", test},
                          {"verdict", std::string(lang::to_string(result.verdict))},
                          {"failure", std::string(runtime::to_string(result.failure_kind))},
                          {"steps", result.steps}}
               .dump()
        << '\n';
    for (const auto& e : result.events)
        out << nlohmann::json{{"type", "event"},
                              {"test", test},
                              {"t", e.timestamp},
                              {"parent", e.parent.value},
                              {"child", e.child.value}}
                   .dump()
            << '\n';
    for (const auto& s : result.snapshots)
        out << nlohmann::json{{"type", "snapshot"},
                              {"test", test},
                              {"predicate", s.predicate.value},
                              {"occurrence", s.occurrence},
                              {"values", s.values},
                              {"negated", s.negated}}
                   .dump()
            << '\n';
}

} // namespace acdc::cli
