#pragma once

#include <stdexcept>
#include <string>

namespace harqr {

// Base class for every failure produced by an estimator or sampler.
// The CLI maps these to exit code 2; config problems use
// std::invalid_argument and map to exit code 1.
class EstimatorError : public std::runtime_error {
 public:
  explicit EstimatorError(const std::string& what) : std::runtime_error(what) {}
};

// A sampler ran past its block guard. Signals a degenerate input
// (e.g. all-zero gains) rather than a long but finite transmission.
class GuardExceededError : public EstimatorError {
 public:
  explicit GuardExceededError(const std::string& what) : EstimatorError(what) {}
};

// Every Monte-Carlo trial produced N_t = 0: the horizon is too short
// to observe a single renewal, so the estimate carries no information.
class DegenerateEstimateError : public EstimatorError {
 public:
  explicit DegenerateEstimateError(const std::string& what)
      : EstimatorError(what) {}
};

// Numerical integration did not reach the requested tolerance.
class IntegrationError : public EstimatorError {
 public:
  IntegrationError(const std::string& what, double achieved_rel_error)
      : EstimatorError(what + " (achieved relative error " +
                       std::to_string(achieved_rel_error) + ")"),
        achieved_rel_error(achieved_rel_error) {}

  double achieved_rel_error;
};

}  // namespace harqr
