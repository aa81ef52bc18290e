#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "acdc/lang/program.hpp"
#include "acdc/search/search.hpp"

namespace acdc::cli {

// {"cases": [{"args": [int, ...], "expected": "text"}, ...]}
lang::TestSuite suite_from_json(const nlohmann::json& j);
nlohmann::json suite_to_json(const lang::TestSuite& suite);
lang::TestSuite load_suite(const std::filesystem::path& path);

struct CorpusEntry
{
    std::string name;
    std::filesystem::path program;
    std::filesystem::path suite;
    std::string description;
    std::optional<PredicateId> buggy_predicate;
    std::optional<search::Scenario> expected_scenario;
};

// Paths inside an entry file are relative to the file's directory.
CorpusEntry load_entry(const std::filesystem::path& path);

// Every *.entry.json directly inside `dir`, sorted by file name. Throws
// acdc::Error when there is none.
std::vector<std::filesystem::path> list_entries(const std::filesystem::path& dir);

std::string read_file(const std::filesystem::path& path);

} // namespace acdc::cli
