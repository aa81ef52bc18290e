#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "acdc/ids.hpp"
#include "acdc/lang/ast.hpp"

namespace acdc::lang {

struct StatementInfo
{
    Stmt::Kind kind = Stmt::Kind::Print;
    int function = -1;
    SourceSpan span;
    const Stmt* node = nullptr;
    PredicateId predicate; // valid for If / While
};

struct PredicateInfo
{
    StatementId statement;
    int function = -1;
    SourceSpan span;
};

// A parsed and statically checked compilation unit. Statement nodes are owned
// through unique_ptr so the tables may point into the tree; the type is
// movable but not copyable.
struct Program
{
    std::string source;
    std::string path;
    std::vector<GlobalVar> globals;
    std::vector<FunctionDecl> functions;
    std::vector<StatementInfo> statements; // index = StatementId
    std::vector<PredicateInfo> predicates; // index = PredicateId
    std::uint64_t source_digest = 0;
    int main_function = -1;

    Program() = default;
    Program(Program&&) noexcept = default;
    Program& operator=(Program&&) noexcept = default;
    Program(const Program&) = delete;
    Program& operator=(const Program&) = delete;

    [[nodiscard]] const StatementInfo& statement(StatementId id) const { return statements.at(id.index()); }
    [[nodiscard]] const PredicateInfo& predicate(PredicateId id) const { return predicates.at(id.index()); }
    [[nodiscard]] const FunctionDecl& function(int index) const { return functions.at(static_cast<std::size_t>(index)); }
    [[nodiscard]] bool is_predicate(StatementId id) const { return statement(id).predicate.valid(); }
    [[nodiscard]] std::optional<int> find_function(std::string_view name) const;
};

std::string to_string(Stmt::Kind kind);

// 64-bit FNV-1a over raw bytes.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

struct TestCase
{
    std::vector<std::int64_t> args;
    std::string expected_output;
};

enum class Verdict
{
    Pass,
    Fail,
};

std::string_view to_string(Verdict v);

struct TestSuite
{
    std::vector<TestCase> cases;
    std::vector<Verdict> verdicts; // filled by a baseline run; empty until then

    [[nodiscard]] std::vector<int> failing() const;
    [[nodiscard]] std::vector<int> passing() const;
};

// Normalizes CRLF and lone CR line terminators to LF.
std::string normalize_newlines(std::string_view text);

} // namespace acdc::lang
