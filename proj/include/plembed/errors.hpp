#pragma once

#include <stdexcept>
#include <string>

namespace plembed {

// Input file cannot be read as the declared format.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A mesh, surface, or argument violates a structural invariant. The message
// names the first offending element (vertex/edge/face index) where possible.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A numeric procedure cannot continue (non-positive Jacobian, overflow, ...).
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace plembed
