#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gch {

/// Invalid input: malformed graph text, unknown ids, violated preconditions.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the checked 64-bit arithmetic fast paths; callers retry with big numbers.
class ArithmeticOverflow : public std::overflow_error {
 public:
  ArithmeticOverflow() : std::overflow_error("64-bit arithmetic overflow") {}
};

/// A configurable size cap was hit before the computation finished.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what_cap, std::size_t cap, std::size_t attempted)
      : std::runtime_error(what_cap + " cap " + std::to_string(cap) + " exceeded (attempted " +
                           std::to_string(attempted) + ")"),
        cap_(cap),
        attempted_(attempted) {}

  std::size_t cap() const noexcept { return cap_; }
  std::size_t attempted() const noexcept { return attempted_; }

 private:
  std::size_t cap_;
  std::size_t attempted_;
};

}  // namespace gch
