#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wbs {

/// Malformed or out-of-domain input (bad labels, NaN distances, K outside (0,1], ...).
class invalid_input : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A finite prefix was too short for the requested witness. `required()` is the
/// prefix length (1-based index count) that would have sufficed.
class needs_more_data : public std::runtime_error {
  public:
    needs_more_data(const std::string& what, std::size_t required)
      : std::runtime_error(what + " (need prefix length " + std::to_string(required) + ")"),
        required_{required} {}

    std::size_t required() const noexcept { return required_; }

  private:
    std::size_t required_;
};

/// An inequality that a certificate claims was found false. Never expected to fire.
class certificate_violation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Two bump supports overlap, so the pair family cannot define n(x).
class inconsistent_family : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

} // namespace wbs
