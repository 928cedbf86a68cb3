#pragma once

#include <stdexcept>
#include <string>

namespace cantor {

// Raised when an argument lies outside an operation's mathematical domain
// (base < 2, composite "prime", empty union passed to gaps, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Raised when a computation would exceed a documented resource cap.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cantor
