#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cuntz {

/// Malformed textual input (cycle notation, word strings). Carries the byte
/// offset of the first offending character.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// Raised when a computation would exceed the configured memory budget or a
/// hard dimension cap. The message names the cap that was hit.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace cuntz
