#pragma once

#include <stdexcept>
#include <string>

namespace sepvol {

/// Malformed arguments: wrong dimensions, non-Hermitian or non-unitary input.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameters outside the domain of a construction. `constraint()` names the
/// violated condition so front ends can report it.
class DomainError : public std::domain_error {
 public:
  DomainError(std::string constraint, const std::string& what)
      : std::domain_error(what), constraint_(std::move(constraint)) {}

  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string constraint_;
};

class Unsupported : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sepvol
