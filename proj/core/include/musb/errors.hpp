#pragma once

#include <stdexcept>
#include <string>

namespace musb {

// Argument outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Adaptive refinement stopped before the requested accuracy was reached.
class ToleranceNotMet : public std::runtime_error {
 public:
  ToleranceNotMet(const std::string& what, double achieved_error);
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

// An integral was observed to grow instead of decay.
class NonConvergent : public std::runtime_error {
 public:
  explicit NonConvergent(const std::string& what) : std::runtime_error(what) {}
};

class OverflowError : public std::overflow_error {
 public:
  explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

}  // namespace musb
