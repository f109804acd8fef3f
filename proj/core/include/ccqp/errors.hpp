#ifndef CCQP_ERRORS_HPP_
#define CCQP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ccqp {

/// Malformed inputs: dimension mismatches, unreadable or ill-formed problem files.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Solver parameters outside the admissible region (and not overridden).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// The Gram matrix of the constraint rows is numerically rank deficient,
/// i.e. the constraint map is not surjective.
class SurjectivityViolation : public std::runtime_error {
 public:
  explicit SurjectivityViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Operation applied to an iterate that is not in the required lifecycle
/// stage (e.g. reading the shadow point of a never-stepped state).
class StateError : public std::logic_error {
 public:
  explicit StateError(const std::string& what) : std::logic_error(what) {}
};

/// A function value was requested from a prox oracle that only provides
/// the prox itself.
class ValueOracleMissing : public std::runtime_error {
 public:
  explicit ValueOracleMissing(const std::string& what) : std::runtime_error(what) {}
};

/// The w-subproblem of the directly extended scheme has no solver for the
/// given operator form.
class WSubproblemUnsupported : public std::runtime_error {
 public:
  explicit WSubproblemUnsupported(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative estimator ran out of iterations. Carries its best estimate.
class NoConvergence : public std::runtime_error {
 public:
  NoConvergence(const std::string& what, double best)
      : std::runtime_error(what), best_estimate(best) {}
  double best_estimate;
};

}  // namespace ccqp

#endif  // CCQP_ERRORS_HPP_
