#pragma once

#include <stdexcept>
#include <string>

namespace coneweyl {

/// Wrong homogeneity degree, point off the hyperboloid, and similar misuse.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A degree -2 function with nonzero invariant integral has no degree-0 potential.
class NotCoexact : public std::runtime_error {
 public:
  NotCoexact(const std::string& what, double residual_mean)
      : std::runtime_error(what), residual_mean_(residual_mean) {}
  double residual_mean() const noexcept { return residual_mean_; }

 private:
  double residual_mean_;
};

/// (1/4 pi e) int c is not an integer within tolerance, so (D, c) is not a valid pair.
class NonIntegerCharge : public std::runtime_error {
 public:
  NonIntegerCharge(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Field evaluation requested too close to the light cone x^2 = 0.
class ConeProximity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace coneweyl
