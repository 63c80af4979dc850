#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bgkc {

// Value outside the physically admissible range (|u| > L, data outside the cone, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Two objects defined on different grids were combined.
class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CflViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Fixed-point iteration hit its iteration cap.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, int iterations, double residual)
      : std::runtime_error(what), iterations_(iterations), residual_(residual) {}
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

// Interface data left the admissible cone beyond tolerance.
class InterfaceInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration problems, one message per offending field.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> items);
  const std::vector<std::string>& items() const { return items_; }

 private:
  std::vector<std::string> items_;
};

}  // namespace bgkc
