#include "acdc/cli/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "acdc/error.hpp"

namespace acdc::cli {

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

lang::TestSuite suite_from_json(const nlohmann::json& j)
{
    try {
        lang::TestSuite suite;
        for (const auto& c : j.at("cases")) {
            lang::TestCase t;
            t.args = c.at("args").get<std::vector<std::int64_t>>();
            t.expected_output = lang::normalize_newlines(c.at("expected").get<std::string>());
            suite.cases.push_back(std::move(t));
        }
        return suite;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed test suite: ") + e.what());
    }
}

nlohmann::json suite_to_json(const lang::TestSuite& suite)
{
    auto cases = nlohmann::json::array();
    for (const auto& t : suite.cases)
        cases.push_back({{"args", t.args}, {"expected", t.expected_output}});
    return {{"cases", std::move(cases)}};
}

lang::TestSuite load_suite(const std::filesystem::path& path)
{
    try {
        return suite_from_json(nlohmann::json::parse(read_file(path)));
    } catch (const nlohmann::json::exception& e) {
        throw Error(path.string() + ": " + e.what());
    } catch (const Error& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

CorpusEntry load_entry(const std::filesystem::path& path)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw Error(path.string() + ": " + e.what());
    }
    const auto dir = path.parent_path();
    CorpusEntry e;
    try {
        e.name = j.at("name").get<std::string>();
        e.program = dir / j.at("program").get<std::string>();
        e.suite = dir / j.at("suite").get<std::string>();
        e.description = j.value("description", std::string());
        if (j.contains("buggy_predicate") && !j.at("buggy_predicate").is_null())
            e.buggy_predicate = PredicateId(j.at("buggy_predicate").get<std::int32_t>());
        if (j.contains("expected_scenario") && !j.at("expected_scenario").is_null()) {
            const int s = j.at("expected_scenario").get<int>();
            if (s < 1 || s > 5)
                throw Error("expected_scenario must be 1..5");
            e.expected_scenario = static_cast<search::Scenario>(s);
        }
    } catch (const nlohmann::json::exception& ex) {
        throw Error(path.string() + ": " + ex.what());
    }
    for (const auto& p : {e.program, e.suite})
        if (!std::filesystem::exists(p))
            throw Error(path.string() + ": referenced file " + p.string() + " does not exist");
    return e;
}

std::vector<std::filesystem::path> list_entries(const std::filesystem::path& dir)
{
    if (!std::filesystem::is_directory(dir))
        throw Error(dir.string() + " is not a directory");
    std::vector<std::filesystem::path> out;
    for (const auto& f : std::filesystem::directory_iterator(dir)) {
        const std::string name = f.path().filename().string();
        if (f.is_regular_file() && name.size() > 11 && name.ends_with(".entry.json"))
            out.push_back(f.path());
    }
    if (out.empty())
        throw Error("no corpus entries (*.entry.json) in " + dir.string());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace acdc::cli
