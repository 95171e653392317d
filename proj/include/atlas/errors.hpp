#pragma once

#include <stdexcept>
#include <string>

namespace atlas {

// Input data that is structurally inconsistent (bad degrees, duplicate
// labels, order sums that do not match the twist). CLI exit code 3.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Consistent data fed to an operation whose mathematical preconditions it
// does not meet (wrong twist for stratification, orders outside a table,
// missing germs). CLI exit code 4.
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace atlas
