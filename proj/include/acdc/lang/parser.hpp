#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "acdc/error.hpp"
#include "acdc/ids.hpp"
#include "acdc/lang/program.hpp"

namespace acdc::lang {

struct Diagnostic
{
    int line = 0;
    int column = 0;
    std::string message;
};

// Thrown by parse(); carries every diagnostic found. Syntax errors stop at the
// first one, semantic checks report all of them.
class CompileError : public Error
{
  public:
    CompileError(std::string path, std::vector<Diagnostic> diagnostics);

    [[nodiscard]] const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }
    [[nodiscard]] const std::string& path() const noexcept { return path_; }

  private:
    std::string path_;
    std::vector<Diagnostic> diagnostics_;
};

// Parses and type-checks a whole source file. `path` only feeds diagnostics.
Program parse(std::string_view source, std::string path = "<input>");

Program parse_file(const std::string& path);

// Every PredicateId in id order.
std::vector<PredicateId> predicate_sites(const Program& program);

} // namespace acdc::lang
