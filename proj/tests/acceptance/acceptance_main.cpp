// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

#include "acdc/cli/bench.hpp"
#include "acdc/graphs/cdg.hpp"
#include "acdc/graphs/chains.hpp"
#include "acdc/graphs/postdom.hpp"
#include "acdc/lang/parser.hpp"
#include "acdc/learn/svm.hpp"
#include "acdc/localize/causal.hpp"
#include "acdc/localize/coverage.hpp"
#include "acdc/localize/ochiai.hpp"
#include "acdc/patch/patch.hpp"
#include "acdc/runtime/interpreter.hpp"
#include "acdc/search/pattern.hpp"
#include "oracles.hpp"

using namespace acdc;
namespace fs = std::filesystem;

namespace {

const fs::path kCorpus = ACDC_CORPUS_DIR;

struct Outcome
{
    bool pass = false;
    std::string detail;
};

Outcome within(Outcome o, double secs, double limit)
{
    if (secs >= limit) {
        o.pass = false;
        o.detail += " (over the " + std::to_string(static_cast<int>(limit)) + " s limit)";
    }
    return o;
}

Outcome control_dependence()
{
    std::mt19937_64 rng(20240601);
    for (int round = 0; round < 200; ++round) {
        const int n = 1 + static_cast<int>(rng() % 12);
        const auto cfg = oracle::random_cfg(rng, n);
        const auto cdg = graphs::control_dependences(cfg, graphs::postdominators(cfg));
        std::vector<std::pair<int, int>> got;
        for (const auto& [a, b] : cdg.edges())
            got.emplace_back(a.value, b.value);
        std::sort(got.begin(), got.end());
        if (got != oracle::brute_control_dependences(cfg))
            return {false, "mismatch on graph " + std::to_string(round)};
    }
    return {true, "200 graphs agree"};
}

Outcome chain_matching()
{
    std::mt19937_64 rng(77);
    long checks = 0;
    for (int round = 0; round < 500; ++round) {
        const auto cdg = oracle::random_cdg(rng, 4 + static_cast<int>(rng() % 3), 6 + static_cast<int>(rng() % 4));
        const auto events = oracle::random_events(rng, cdg, static_cast<int>(rng() % 51));
        for (int len = 1; len <= 4; ++len)
            for (const auto& c : graphs::enumerate_chains(cdg, len)) {
                ++checks;
                if (localize::chain_covered(c, events).covered != oracle::exhaustive_chain_covered(c, events))
                    return {false, "mismatch on instance " + std::to_string(round)};
            }
    }
    return {true, "500 instances, " + std::to_string(checks) + " chains agree"};
}

Outcome ochiai_cases()
{
    const double a = localize::ochiai(3, 1, 3), b = localize::ochiai(3, 0, 3), c = localize::ochiai(0, 4, 3);
    const bool ok = std::abs(a - 0.8660254037844386) < 1e-12 && std::abs(b - 1.0) < 1e-12 && std::abs(c) < 1e-12;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.15f %.15f %.15f", a, b, c);
    return {ok, buf};
}

Outcome causal_ranking()
{
    const std::vector<double> y{1, 1, 1, 0, 0, 0, 0, 0};
    const std::vector<double> c{1, 1, 1, 1, 1, 1, 0, 0};
    const std::vector<std::vector<double>> ts{
        {1, 1, 1, 1, 0, 0, 0, 0}, {1, 1, 0, 0, 1, 0, 0, 0}, {1, 0, 0, 1, 1, 1, 0, 0}};
    const double expected[] = {0.75, 1.0 / 3.0, -0.75};
    std::vector<double> tau;
    std::ostringstream detail;
    bool ok = true;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const auto fit = localize::fit_causal_model(y, ts[i], std::span<const double>(c));
        std::vector<std::vector<double>> cols{ts[i]};
        if (fit.beta)
            cols.push_back(c);
        const auto ref = oracle::reference_ols(cols, y);
        ok = ok && !fit.degenerate && std::abs(fit.tau - ref[1]) < 1e-9 && std::abs(fit.tau - expected[i]) < 1e-9;
        tau.push_back(fit.tau);
        detail << (i ? " " : "tau ") << fit.tau;
    }
    ok = ok && tau[0] > tau[1] && tau[1] > tau[2];
    return {ok, detail.str()};
}

std::vector<std::int64_t> literal_pattern(search::Pattern p, std::int64_t n)
{
    using search::Pattern;
    std::set<std::int64_t> s;
    for (std::int64_t i = 1; i <= n; ++i) {
        const bool first = i == 1, last = i == n;
        bool take = false;
        switch (p) {
        case Pattern::All: take = true; break;
        case Pattern::First: take = first; break;
        case Pattern::Last: take = last; break;
        case Pattern::AllButFirst: take = !first; break;
        case Pattern::AllButLast: take = !last; break;
        case Pattern::AllButFirstAndLast: take = !first && !last; break;
        case Pattern::Second: take = i == 2; break;
        case Pattern::SecondToLast: take = i == n - 1; break;
        case Pattern::FirstAndLast: take = first || last; break;
        case Pattern::Odd: take = i % 2 == 1; break;
        case Pattern::Even: take = i % 2 == 0; break;
        }
        if (take)
            s.insert(i);
    }
    return {s.begin(), s.end()};
}

Outcome pattern_table()
{
    int rows = 0;
    for (auto p : search::kPatterns)
        for (std::int64_t n = 0; n <= 6; ++n, ++rows)
            if (search::occurrences_for_pattern(p, n) != literal_pattern(p, n))
                return {false, std::string(search::to_string(p)) + " differs at n=" + std::to_string(n)};
    return {true, std::to_string(rows) + " rows agree"};
}

std::optional<double> accuracy_at(const cli::EntryRow& row, double fraction)
{
    for (const auto& [f, a] : row.accuracies)
        if (std::abs(f - fraction) < 1e-12)
            return a;
    return std::nullopt;
}

Outcome corpus_bench(const cli::BenchmarkSummary& s)
{
    std::set<std::string> programs;
    for (const auto& path : cli::list_entries(kCorpus))
        programs.insert(cli::load_entry(path).program.stem().string().substr(
            0, cli::load_entry(path).program.stem().string().find('_')));
    std::ostringstream d;
    d << s.rows.size() << " entries over " << programs.size() << " programs, FULL " << s.full << ", PARTIAL "
      << s.partial << ", NONE " << s.none << ", errors " << s.errors << ", buggy predicate listed "
      << s.buggy_in_pred_list << "/" << s.buggy_known << ", scenarios " << s.scenario_correct << "/"
      << s.scenario_expected;
    const bool ok = s.rows.size() >= 12 && programs.size() >= 4 && s.full >= 9 && s.buggy_in_pred_list >= 10 &&
                    s.scenario_correct == s.scenario_expected && s.errors == 0;
    return {ok, d.str()};
}

double train_accuracy(const learn::ClassifierModel& m, const std::vector<std::vector<std::int64_t>>& x, const std::vector<int>& y)
{
    std::size_t hit = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        hit += (m.negate(x[i]) ? 1 : -1) == y[i];
    return static_cast<double>(hit) / static_cast<double>(x.size());
}

Outcome svm_checks(const cli::BenchmarkSummary& s)
{
    std::ostringstream d;
    bool ok = true;

    const std::vector<std::vector<std::int64_t>> xor_x{{0, 0}, {1, 1}, {0, 1}, {1, 0}};
    const std::vector<int> xor_y{1, 1, -1, -1};
    learn::TrainStats st;
    const auto m = learn::train_svm(xor_x, xor_y, {}, &st);
    std::vector<std::vector<double>> k(4, std::vector<double>(4));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            k[i][j] = learn::kernel_value(m.kernel, m.gamma, st.points[i], st.points[j]);
    const auto ref = oracle::reference_svm(k, st.labels, st.upper_bound);
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        double f = ref.bias;
        for (std::size_t j = 0; j < 4; ++j)
            f += ref.alpha[j] * st.labels[j] * k[i][j];
        worst = std::max({worst, std::abs(m.decision_value(xor_x[i]) - f), std::abs(st.alpha[i] - ref.alpha[i])});
    }
    const double xor_acc = train_accuracy(m, xor_x, xor_y);
    ok = ok && xor_acc == 1.0 && worst < 1e-3;
    d << "xor " << xor_acc << " (ref gap " << worst << ")";

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int64_t> u(-50, 50);
    std::vector<std::vector<std::int64_t>> x;
    std::vector<int> y;
    while (x.size() < 100) {
        const std::int64_t a = u(rng), b = u(rng), v = 2 * a + b - 10;
        if (std::abs(v) < 8)
            continue;
        x.push_back({a, b});
        y.push_back(v > 0 ? 1 : -1);
    }
    learn::SvmConfig cfg;
    cfg.c = 100.0;
    const double sep = train_accuracy(learn::train_svm(x, y, cfg), x, y);
    ok = ok && sep == 1.0;
    d << ", separable " << sep;

    int s1 = 0;
    for (const auto& row : s.rows) {
        if (row.expected_scenario != 1)
            continue;
        ++s1;
        const auto a = accuracy_at(row, 1.0);
        ok = ok && a && *a == 1.0;
        d << ", " << row.name << " " << (a ? std::to_string(*a) : "n/a");
    }
    ok = ok && s1 > 0;
    return {ok, d.str()};
}

Outcome determinism(const std::string& first)
{
    cli::PipelineConfig cfg;
    cfg.jobs = 4;
    const auto second = cli::summary_to_json(cli::run_benchmark(kCorpus, cfg)).dump(2);
    return {first == second, first == second ? std::to_string(first.size()) + " bytes identical" : "summaries differ"};
}

// Remembers which (predicate, occurrence, state) triples the reference run
// negated and replays exactly those.
class MemorizingOracle : public patch::Oracle
{
  public:
    MemorizingOracle(std::vector<PredicateId> preds, const std::vector<runtime::StateSnapshot>& seen)
        : preds_(std::move(preds))
    {
        for (const auto& s : seen)
            memory_[{s.predicate.value, s.occurrence, s.values}] = s.negated;
    }
    std::vector<PredicateId> predicates() const override { return preds_; }
    bool negate(PredicateId p, std::int64_t occ, std::span<const std::int64_t> f) const override
    {
        auto it = memory_.find({p.value, occ, std::vector<std::int64_t>(f.begin(), f.end())});
        return it != memory_.end() && it->second;
    }

  private:
    std::vector<PredicateId> preds_;
    std::map<std::tuple<int, std::int64_t, std::vector<std::int64_t>>, bool> memory_;
};

Outcome oracle_equivalence()
{
    std::vector<cli::Subject> subjects;
    for (const auto& path : cli::list_entries(kCorpus))
        subjects.push_back(cli::load_subject(cli::load_entry(path)));
    std::mt19937_64 rng(9);
    std::map<std::string, int> kinds;
    for (int round = 0; round < 100; ++round) {
        const auto& subj = subjects[rng() % subjects.size()];
        const runtime::Executor ex(subj.program);
        const auto& test = subj.suite.cases[rng() % subj.suite.cases.size()];
        const auto preds = subj.program.predicates.size();
        runtime::NegationPlan plan;
        std::vector<PredicateId> chosen;
        const std::size_t count = 1 + rng() % std::min<std::size_t>(3, preds);
        while (plan.entries.size() < count) {
            const PredicateId p(static_cast<std::int32_t>(rng() % preds));
            if (rng() % 5 == 0) {
                plan.entries[p] = runtime::OccurrenceSet::all();
            } else {
                std::vector<std::int64_t> idx;
                for (std::int64_t i = 1; i <= 6; ++i)
                    if (rng() % 2)
                        idx.push_back(i);
                plan.entries[p] = runtime::OccurrenceSet::of(idx);
            }
        }
        for (const auto& [p, _] : plan.entries)
            chosen.push_back(p);
        runtime::ExecConfig cfg;
        cfg.step_budget = 100000;
        cfg.snapshot_predicates = chosen;
        const auto want = ex.execute_with_negation(test, plan, cfg);
        const MemorizingOracle oracle(chosen, want.snapshots);
        runtime::ExecConfig plain;
        plain.step_budget = cfg.step_budget;
        const auto got = patch::execute_with_oracle(ex, test, oracle, plain);
        ++kinds[std::string(runtime::to_string(want.failure_kind))];
        if (got.output != want.output || got.failure_kind != want.failure_kind)
            return {false, "plan " + std::to_string(round) + " on " + subj.name + " diverges"};
    }
    std::string d = "100 plans identical (";
    for (const auto& [k, n] : kinds)
        d += k + " " + std::to_string(n) + " ";
    d.back() = ')';
    return {true, d};
}

} // namespace

int main()
{
    using clock = std::chrono::steady_clock;
    int failed = 0;
    auto report = [&](int id, const std::function<Outcome()>& check, double limit) {
        const auto t0 = clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(clock::now() - t0).count();
        if (limit > 0)
            o = within(o, secs, limit);
        failed += !o.pass;
        std::printf("criterion %d: %s  %s [%.2fs]\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
        std::fflush(stdout);
    };

    report(1, control_dependence, 10.0);
    report(2, chain_matching, 5.0);
    report(3, ochiai_cases, 0);
    report(4, causal_ranking, 0);
    report(5, pattern_table, 0);

    cli::BenchmarkSummary bench;
    std::string bench_json;
    report(6,
           [&] {
               bench = cli::run_benchmark(kCorpus, cli::PipelineConfig{});
               bench_json = cli::summary_to_json(bench).dump(2);
               return corpus_bench(bench);
           },
           120.0);
    report(7, [&] { return svm_checks(bench); }, 0);
    report(8, [&] { return determinism(bench_json); }, 0);
    report(9, oracle_equivalence, 0);

    std::printf("%s: %d of 9 criteria failed\n", failed ? "FAIL" : "PASS", failed);
    return failed ? 1 : 0;
}
