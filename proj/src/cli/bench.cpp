#include "acdc/cli/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "acdc/parallel.hpp"

namespace acdc::cli {

EntryRow make_row(const PipelineReport& report)
{
    EntryRow row;
    row.name = report.name;
    row.outcome = std::string(to_string(report.outcome));
    if (report.buggy_predicate) {
        row.buggy_predicate = report.buggy_predicate->value;
        row.buggy_in_pred_list = std::any_of(report.predicates.begin(), report.predicates.end(),
                                             [&](const auto& p) { return p.predicate == *report.buggy_predicate; });
    }
    if (report.expected_scenario)
        row.expected_scenario = static_cast<int>(*report.expected_scenario);
    for (search::Pattern p : search::kPatterns)
        row.pattern_counts[std::string(search::to_string(p))] = 0;
    for (const auto& s : report.solutions) {
        if (s.completeness == search::Completeness::Full)
            ++row.full_solutions;
        else
            ++row.partial_solutions;
        for (const auto& pair : s.pairs)
            ++row.pattern_counts[std::string(search::to_string(pair.pattern))];
    }
    if (report.chosen) {
        const auto& chosen = report.solutions[*report.chosen];
        if (chosen.scenario)
            row.scenario = static_cast<int>(*chosen.scenario);
        for (const auto& pair : chosen.pairs)
            row.chosen_patterns.emplace_back(search::to_string(pair.pattern));
    }
    for (const auto& a : report.accuracies)
        row.accuracies.emplace_back(a.fraction, a.report ? std::optional<double>(a.report->accuracy) : std::nullopt);
    return row;
}

namespace {

template <typename T>
nlohmann::json opt(const std::optional<T>& v)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <typename T>
std::optional<T> get_opt(const nlohmann::json& j, const char* key)
{
    if (!j.contains(key) || j.at(key).is_null())
        return std::nullopt;
    return j.at(key).get<T>();
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string fraction_label(double f)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", f);
    return buf;
}

} // namespace

nlohmann::json row_to_json(const EntryRow& row)
{
    nlohmann::json j;
    j["name"] = row.name;
    j["outcome"] = row.outcome;
    if (!row.error.empty())
        j["error"] = row.error;
    j["buggy_predicate"] = opt(row.buggy_predicate);
    j["buggy_in_pred_list"] = opt(row.buggy_in_pred_list);
    j["expected_scenario"] = opt(row.expected_scenario);
    j["scenario"] = opt(row.scenario);
    j["full_solutions"] = row.full_solutions;
    j["partial_solutions"] = row.partial_solutions;
    j["chosen_patterns"] = row.chosen_patterns;
    j["pattern_counts"] = row.pattern_counts;
    auto accs = nlohmann::json::array();
    for (const auto& [f, a] : row.accuracies)
        accs.push_back({{"fraction", f}, {"accuracy", opt(a)}});
    j["accuracies"] = std::move(accs);
    return j;
}

EntryRow row_from_json(const nlohmann::json& j)
{
    EntryRow row;
    row.name = j.at("name").get<std::string>();
    row.outcome = j.at("outcome").get<std::string>();
    row.error = j.value("error", std::string());
    row.buggy_predicate = get_opt<int>(j, "buggy_predicate");
    row.buggy_in_pred_list = get_opt<bool>(j, "buggy_in_pred_list");
    row.expected_scenario = get_opt<int>(j, "expected_scenario");
    row.scenario = get_opt<int>(j, "scenario");
    row.full_solutions = j.at("full_solutions").get<std::size_t>();
    row.partial_solutions = j.at("partial_solutions").get<std::size_t>();
    row.chosen_patterns = j.at("chosen_patterns").get<std::vector<std::string>>();
    row.pattern_counts = j.at("pattern_counts").get<std::map<std::string, int>>();
    for (const auto& a : j.at("accuracies"))
        row.accuracies.emplace_back(a.at("fraction").get<double>(), get_opt<double>(a, "accuracy"));
    return row;
}

BenchmarkSummary aggregate(std::vector<EntryRow> rows)
{
    BenchmarkSummary s;
    std::map<double, std::vector<double>> by_fraction;
    for (search::Pattern p : search::kPatterns)
        s.pattern_histogram[std::string(search::to_string(p))] = 0;
    for (const auto& row : rows) {
        if (row.outcome == "FULL")
            ++s.full;
        else if (row.outcome == "PARTIAL")
            ++s.partial;
        else if (row.outcome == "NONE")
            ++s.none;
        else
            ++s.errors;
        if (row.buggy_predicate) {
            ++s.buggy_known;
            if (row.buggy_in_pred_list.value_or(false))
                ++s.buggy_in_pred_list;
        }
        if (row.expected_scenario) {
            ++s.scenario_expected;
            if (row.scenario == row.expected_scenario)
                ++s.scenario_correct;
        }
        for (const auto& [name, n] : row.pattern_counts)
            s.pattern_histogram[name] += n;
        if (row.scenario)
            ++s.scenario_distribution[*row.scenario];
        for (const auto& [f, a] : row.accuracies)
            if (a)
                by_fraction[f].push_back(*a);
    }
    for (const auto& [f, values] : by_fraction) {
        FractionStats st;
        st.fraction = f;
        st.count = values.size();
        double sum = 0.0;
        for (double v : values)
            sum += v;
        st.mean = sum / static_cast<double>(values.size());
        st.min = *std::min_element(values.begin(), values.end());
        st.max = *std::max_element(values.begin(), values.end());
        s.accuracy.push_back(st);
    }
    s.rows = std::move(rows);
    return s;
}

BenchmarkSummary run_benchmark(const std::filesystem::path& dir, const PipelineConfig& config)
{
    const auto paths = list_entries(dir);
    std::vector<EntryRow> rows(paths.size());
    PipelineConfig inner = config;
    inner.jobs = 1;
    parallel_for(paths.size(), config.jobs, [&](std::size_t i) {
        std::optional<CorpusEntry> entry;
        try {
            entry = load_entry(paths[i]);
            PipelineConfig cfg = inner;
            if (config.output_dir)
                cfg.output_dir = *config.output_dir / "patches";
            rows[i] = make_row(run_pipeline(*entry, cfg));
        } catch (const std::exception& e) {
            EntryRow row;
            row.name = entry ? entry->name : paths[i].filename().string();
            row.outcome = "ERROR";
            row.error = e.what();
            if (entry && entry->buggy_predicate)
                row.buggy_predicate = entry->buggy_predicate->value;
            if (entry && entry->expected_scenario)
                row.expected_scenario = static_cast<int>(*entry->expected_scenario);
            rows[i] = std::move(row);
        }
    });
    return aggregate(std::move(rows));
}

nlohmann::json summary_to_json(const BenchmarkSummary& s)
{
    nlohmann::json j;
    auto rows = nlohmann::json::array();
    for (const auto& r : s.rows)
        rows.push_back(row_to_json(r));
    j["entries"] = std::move(rows);
    j["aggregate"] = {{"entries", s.rows.size()},
                      {"full", s.full},
                      {"partial", s.partial},
                      {"none", s.none},
                      {"errors", s.errors},
                      {"buggy_known", s.buggy_known},
                      {"buggy_in_pred_list", s.buggy_in_pred_list},
                      {"scenario_expected", s.scenario_expected},
                      {"scenario_correct", s.scenario_correct}};
    j["pattern_histogram"] = s.pattern_histogram;
    nlohmann::json dist = nlohmann::json::object();
    for (const auto& [k, v] : s.scenario_distribution)
        dist[std::to_string(k)] = v;
    j["scenario_distribution"] = std::move(dist);
    auto acc = nlohmann::json::array();
    for (const auto& a : s.accuracy)
        acc.push_back({{"fraction", a.fraction}, {"count", a.count}, {"mean", a.mean}, {"min", a.min}, {"max", a.max}});
    j["accuracy"] = std::move(acc);
    return j;
}

BenchmarkSummary summary_from_json(const nlohmann::json& j)
{
    try {
        std::vector<EntryRow> rows;
        for (const auto& r : j.at("entries"))
            rows.push_back(row_from_json(r));
        return aggregate(std::move(rows));
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed benchmark summary: ") + e.what());
    }
}

std::string entries_csv(const BenchmarkSummary& s)
{
    std::ostringstream out;
    out << "name,outcome,buggy_predicate,buggy_in_pred_list,expected_scenario,scenario,full_solutions,"
           "partial_solutions,chosen_patterns";
    std::vector<double> fractions;
    for (const auto& a : s.accuracy)
        fractions.push_back(a.fraction);
    for (double f : fractions)
        out << ",accuracy_" << fraction_label(f);
    out << '\n';
    for (const auto& r : s.rows) {
        std::string patterns;
        for (const auto& p : r.chosen_patterns)
            patterns += (patterns.empty() ? "" : ";") + p;
        out << r.name << ',' << r.outcome << ',' << (r.buggy_predicate ? std::to_string(*r.buggy_predicate) : "")
            << ',' << (r.buggy_in_pred_list ? (*r.buggy_in_pred_list ? "yes" : "no") : "") << ','
            << (r.expected_scenario ? std::to_string(*r.expected_scenario) : "") << ','
            << (r.scenario ? std::to_string(*r.scenario) : "") << ',' << r.full_solutions << ','
            << r.partial_solutions << ",\"" << patterns << '"';
        for (double f : fractions) {
            out << ',';
            for (const auto& [rf, a] : r.accuracies)
                if (rf == f && a)
                    out << fmt(*a);
        }
        out << '\n';
    }
    return out.str();
}

std::string pattern_csv(const BenchmarkSummary& s)
{
    std::ostringstream out;
    out << "pattern,count\n";
    for (search::Pattern p : search::kPatterns) {
        const std::string name(search::to_string(p));
        auto it = s.pattern_histogram.find(name);
        out << '"' << name << "\"," << (it == s.pattern_histogram.end() ? 0 : it->second) << '\n';
    }
    return out.str();
}

std::string scenario_csv(const BenchmarkSummary& s)
{
    std::ostringstream out;
    out << "scenario,count\n";
    for (int k = 1; k <= 5; ++k) {
        auto it = s.scenario_distribution.find(k);
        out << k << ',' << (it == s.scenario_distribution.end() ? 0 : it->second) << '\n';
    }
    return out.str();
}

std::string accuracy_csv(const BenchmarkSummary& s)
{
    std::ostringstream out;
    out << "fraction,entries,mean,min,max\n";
    for (const auto& a : s.accuracy)
        out << fraction_label(a.fraction) << ',' << a.count << ',' << fmt(a.mean) << ',' << fmt(a.min) << ','
            << fmt(a.max) << '\n';
    return out.str();
}

} // namespace acdc::cli
