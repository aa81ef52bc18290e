#pragma once

#include <stdexcept>
#include <string>

namespace acdc {

class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Raised when a search space or a profiling pass exceeds its configured budget.
class FeasibilityError : public Error
{
  public:
    using Error::Error;
};

} // namespace acdc
