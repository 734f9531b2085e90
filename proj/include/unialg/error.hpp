#pragma once

#include <stdexcept>
#include <string>

namespace unialg {

/// Raised on malformed input, contract violations, and conflicting
/// registrations.  Carries a human-readable message.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace unialg
