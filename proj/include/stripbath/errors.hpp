// errors.hpp — exception hierarchy shared by the library and the CLI
#pragma once

#include <stdexcept>
#include <string>

namespace stripbath {

// Bad user input: nonsensical parameter values, malformed config, out-of-domain
// arguments. CLI maps this to exit code 1.
struct ValidationError : std::invalid_argument {
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A requested accuracy could not be met within the configured term/resource
// budget. Carries the bound actually achieved. CLI maps this to exit code 2
// in `check` context and 3 when it is a pure resource exhaustion.
struct TruncationError : std::runtime_error {
  double achieved_bound;
  TruncationError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_bound(achieved) {}
};

// Hard resource guard tripped (dimension/term caps). CLI maps this to exit code 3.
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stripbath
