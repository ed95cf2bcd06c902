#pragma once

#include <stdexcept>
#include <string>

namespace magnon {

// Thrown when a requested quantity has no closed form within the
// zero-plus-one-magnon framework (for example sigma^y matrix elements of a
// pair-entangled state, or channels that take the state out of the conserved
// sector). Callers should fall back to the dense small-system oracle.
class unsupported_analytically : public std::runtime_error {
 public:
  explicit unsupported_analytically(const std::string& message)
      : std::runtime_error(message) {}
};

}  // namespace magnon
