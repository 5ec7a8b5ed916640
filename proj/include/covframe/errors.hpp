#pragma once

#include <stdexcept>
#include <string>

namespace covframe {

/// Operand shapes do not agree (Kraus dims, superoperator vs. state, ...).
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The channel fails the sampled-rotation covariance test.
class NotCovariant : public std::runtime_error {
 public:
  NotCovariant(const std::string& what, double defect)
      : std::runtime_error(what), defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

/// A Vandermonde solve whose residual exceeds its tolerance, or a request
/// beyond the documented conditioning limit.
class IllConditioned : public std::runtime_error {
 public:
  IllConditioned(const std::string& what, double condition_estimate)
      : std::runtime_error(what), condition_(condition_estimate) {}
  double condition_estimate() const noexcept { return condition_; }

 private:
  double condition_;
};

/// The Heisenberg image of J_z^l under a supposedly covariant map is not
/// diagonal. Indicates a covariance or convention bug.
class NonDiagonalHeisenbergImage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A task requested outside its domain, e.g. measuring spin s with j <= s.
class InvalidTask : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ThresholdUnreachable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateFit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace covframe
