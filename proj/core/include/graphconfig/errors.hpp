#pragma once

#include <stdexcept>
#include <string>

namespace graphconfig {

/// Malformed or semantically invalid input (graph files, flags, systems).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// An internal invariant was violated; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace graphconfig
