#pragma once

#include <stdexcept>
#include <string>

namespace hyplane
{

//! Raised on contract violations (degenerate input, malformed files, bad config).
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace hyplane
