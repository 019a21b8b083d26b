#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace permsort {

class SizeMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Raised when a request exceeds an enumeration, BFS, or exact-solver cap.
class LimitExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class EmptyGeneratorSet : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class EmptyLevel : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::invalid_argument {
public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

}  // namespace permsort
