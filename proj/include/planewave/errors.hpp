#pragma once

#include <stdexcept>
#include <string>

namespace planewave {

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure (quadrature, root finding, integration) failed.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(module) {}
  const std::string& module() const { return module_; }

 private:
  std::string module_;
};

}  // namespace planewave
