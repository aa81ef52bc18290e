#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acdc/cli/bench.hpp"
#include "acdc/cli/pipeline.hpp"
#include "acdc/lang/parser.hpp"
#include "acdc/patch/patch.hpp"

namespace fs = std::filesystem;
using namespace acdc;

namespace {

struct Options
{
    std::uint64_t seed = 42;
    int jobs = 1;
    std::int64_t step_budget = 1'000'000;
    int max_chain_length = 4;
    double profile_budget_secs = 60.0;
    std::vector<double> fractions = cli::kDefaultFractions;
    std::string kernel = "rbf";
    double svm_c = 1.0;
    std::optional<double> svm_gamma;
    std::string dump_trace;
};

cli::PipelineConfig make_config(const Options& o)
{
    cli::PipelineConfig c;
    c.seed = o.seed;
    c.jobs = std::max(1, o.jobs);
    c.exec.step_budget = o.step_budget;
    c.localize.max_chain_length = o.max_chain_length;
    c.localize.profile_budget_secs = o.profile_budget_secs;
    c.fractions = o.fractions;
    const auto kernel = learn::parse_kernel(o.kernel);
    if (!kernel)
        throw Error("unknown kernel '" + o.kernel + "' (expected rbf or linear)");
    c.svm.kernel = *kernel;
    c.svm.c = o.svm_c;
    c.svm.gamma = o.svm_gamma;
    c.svm.seed = o.seed;
    return c;
}

cli::Subject subject_from(const std::vector<std::string>& inputs)
{
    if (inputs.size() == 1)
        return cli::load_subject(cli::load_entry(inputs[0]));
    if (inputs.size() == 2)
        return cli::load_subject(fs::path(inputs[0]), fs::path(inputs[1]));
    throw Error("expected either an entry file or a program and a suite");
}

void dump_trace(const Options& o, const cli::Subject& subject)
{
    if (o.dump_trace.empty())
        return;
    std::ofstream out(o.dump_trace, std::ios::binary);
    if (!out)
        throw Error("cannot write " + o.dump_trace);
    const runtime::Executor executor(subject.program);
    runtime::ExecConfig cfg;
    cfg.step_budget = o.step_budget;
    cfg.record_events = true;
    for (std::size_t p = 0; p < subject.program.predicates.size(); ++p)
        cfg.snapshot_predicates.emplace_back(static_cast<std::int32_t>(p));
    for (std::size_t t = 0; t < subject.suite.cases.size(); ++t)
        cli::write_trace_ndjson(out, static_cast<int>(t), executor.execute(subject.suite.cases[t], cfg));
}

void write_text(const fs::path& path, const std::string& text)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out)
        throw Error("cannot write " + path.string());
}

void print(const nlohmann::json& j)
{
    std::cout << j.dump(2) << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Localize control-flow faults, search predicate negations and train runtime patches"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--seed", o.seed, "Seed for every randomized step")->capture_default_str();
    app.add_option("--jobs", o.jobs, "Parallel executions")->capture_default_str();
    app.add_option("--step-budget", o.step_budget, "Interpreter steps per run")->capture_default_str();
    app.add_option("--max-chain-length", o.max_chain_length, "Deepest chain length profiled")->capture_default_str();
    app.add_option("--profile-budget-secs", o.profile_budget_secs, "Wall clock allowed per chain length")
        ->capture_default_str();
    app.add_option("--train-fractions", o.fractions, "Training fractions for evaluation")->delimiter(',');
    app.add_option("--kernel", o.kernel, "rbf or linear")->capture_default_str();
    app.add_option("--svm-c", o.svm_c, "Soft-margin C")->capture_default_str();
    app.add_option("--svm-gamma", o.svm_gamma, "Kernel width (default 1/(d*Var))");
    app.add_option("--dump-trace", o.dump_trace, "Write baseline traces as NDJSON");

    std::vector<std::string> inputs;
    auto add_inputs = [&](CLI::App* sub) {
        sub->add_option("inputs", inputs, "ENTRY.entry.json | PROGRAM.acdc SUITE.json")->required()->expected(1, 2);
    };

    auto* localize_cmd = app.add_subcommand("localize", "Rank suspicious chains and predicates");
    add_inputs(localize_cmd);
    auto* search_cmd = app.add_subcommand("search", "Find (predicate, pattern) repairs");
    add_inputs(search_cmd);

    std::string patch_out;
    auto* train_cmd = app.add_subcommand("train", "Train a patch for the top-ranked solution on the full suite");
    add_inputs(train_cmd);
    train_cmd->add_option("--out", patch_out, "Patch file to write")->required();

    std::string patch_program, patch_file, patch_suite;
    bool emit_source = false;
    auto* patch_cmd = app.add_subcommand("patch", "Apply a patch to a suite or print the patched source");
    patch_cmd->add_option("program", patch_program)->required();
    patch_cmd->add_option("patch", patch_file)->required();
    patch_cmd->add_option("--suite", patch_suite, "Run this suite under the patch");
    patch_cmd->add_flag("--emit-source", emit_source, "Print the annotated source");

    std::string out_dir;
    auto* run_cmd = app.add_subcommand("run", "Whole pipeline for one subject");
    add_inputs(run_cmd);
    run_cmd->add_option("--out", out_dir, "Directory for the patch and patched source");

    auto* eval_cmd = app.add_subcommand("eval", "Accuracy per training fraction");
    add_inputs(eval_cmd);

    std::string corpus_dir;
    std::string bench_out = "bench_out";
    auto* bench_cmd = app.add_subcommand("bench", "Run every corpus entry");
    bench_cmd->add_option("corpus", corpus_dir)->required();
    bench_cmd->add_option("--out", bench_out, "Output directory")->capture_default_str();

    std::string summary_path;
    std::string report_out = "report_out";
    auto* report_cmd = app.add_subcommand("report", "CSV tables from a benchmark summary");
    report_cmd->add_option("summary", summary_path)->required();
    report_cmd->add_option("--out", report_out, "Output directory")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        cli::PipelineConfig config = make_config(o);

        if (localize_cmd->parsed() || search_cmd->parsed() || run_cmd->parsed() || eval_cmd->parsed() ||
            train_cmd->parsed()) {
            const cli::Subject subject = subject_from(inputs);
            dump_trace(o, subject);
            if (localize_cmd->parsed())
                config.last_stage = cli::LastStage::Localize;
            else if (search_cmd->parsed())
                config.last_stage = cli::LastStage::Search;
            else if (train_cmd->parsed())
                config.last_stage = cli::LastStage::Train;
            if (run_cmd->parsed() && !out_dir.empty())
                config.output_dir = out_dir;


            auto report = cli::run_pipeline(subject, config);
            if (train_cmd->parsed()) {
                if (!report.patch)
                    throw Error("no repair found; nothing to train");
                patch::save_patch(*report.patch, patch_out);
                report.json["patch_path"] = patch_out;
            }
            if (eval_cmd->parsed()) {
                nlohmann::json j;
                j["name"] = report.name;
                j["chosen"] = report.json.contains("chosen") ? report.json["chosen"] : nlohmann::json();
                j["evaluation"] =
                    report.json.contains("evaluation") ? report.json["evaluation"] : nlohmann::json::array();
                print(j);
            } else {
                print(report.json);
            }
            if (config.last_stage == cli::LastStage::Localize)
                return 0;
            return cli::exit_code(report.outcome);
        }

        if (patch_cmd->parsed()) {
            const lang::Program program = lang::parse_file(patch_program);
            const auto patch = patch::load_patch(patch_file);
            if (emit_source) {
                search::Solution s;
                s.pairs = patch.provenance.pairs;
                std::cout << patch::emit_patched_source(program, s);
            }
            if (!patch_suite.empty()) {
                const runtime::Executor executor(program);
                const auto suite = cli::load_suite(patch_suite);
                runtime::ExecConfig cfg = config.exec;
                auto rows = nlohmann::json::array();
                std::size_t passed = 0;
                for (std::size_t t = 0; t < suite.cases.size(); ++t) {
                    const auto r = patch::execute_with_oracle(executor, suite.cases[t], patch, cfg);
                    passed += r.verdict == lang::Verdict::Pass;
                    rows.push_back({{"test", t},
                                    {"verdict", std::string(lang::to_string(r.verdict))},
                                    {"failure", std::string(runtime::to_string(r.failure_kind))}});
                }
                nlohmann::json j;
                j["tests"] = rows;
                j["passed"] = passed;
                j["total"] = suite.cases.size();
                print(j);
                return passed == suite.cases.size() ? 0 : 2;
            }
            return 0;
        }

        if (bench_cmd->parsed()) {
            config.output_dir = bench_out;
            const auto summary = cli::run_benchmark(corpus_dir, config);
            write_text(fs::path(bench_out) / "summary.json", cli::summary_to_json(summary).dump(2) + "\n");
            write_text(fs::path(bench_out) / "summary.csv", cli::entries_csv(summary));
            print(cli::summary_to_json(summary)["aggregate"]);
            return 0;
        }

        if (report_cmd->parsed()) {
            const auto summary = cli::summary_from_json(nlohmann::json::parse(cli::read_file(summary_path)));
            write_text(fs::path(report_out) / "patterns.csv", cli::pattern_csv(summary));
            write_text(fs::path(report_out) / "scenarios.csv", cli::scenario_csv(summary));
            write_text(fs::path(report_out) / "accuracy.csv", cli::accuracy_csv(summary));
            std::cout << cli::accuracy_csv(summary);
            return 0;
        }
    } catch (const lang::CompileError& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "acdc: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
