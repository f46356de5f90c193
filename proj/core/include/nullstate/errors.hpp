#pragma once

#include <stdexcept>
#include <string>

namespace nullstate {

/// Argument outside the mathematical domain of a formula (kappa not in (0,8),
/// negative KPZ discriminant, t <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A computed quantity violates an invariant the caller relies on, e.g. a
/// Jacobi parameter that came out non-positive.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Caller-side precondition failure that is not a plain domain error: a stencil
/// that would leave the ordered configuration space, an inadmissible test
/// function, near-degenerate exponents.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Failure inside a numerical routine (eigen-solve, Newton polish, degenerate
/// least-squares fit).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The heat-kernel series could not reach the requested tail bound within the
/// term cap.
class TruncationError : public NumericError {
 public:
  TruncationError(const std::string& what, double t, double achieved_tail)
      : NumericError(what), t_(t), achieved_tail_(achieved_tail) {}

  double t() const noexcept { return t_; }
  double achieved_tail() const noexcept { return achieved_tail_; }

 private:
  double t_;
  double achieved_tail_;
};

}  // namespace nullstate
