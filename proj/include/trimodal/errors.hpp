#pragma once

#include <stdexcept>
#include <string>

namespace trimodal {

// theta lies on a cotangent pole (theta within guard distance of a nonzero
// multiple of pi in the trigonometric regime).
class PoleError : public std::domain_error {
 public:
  explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

// recover_mu called with a - theta0*cot(lambda) <= 0: no real amplitude
// closes the bifurcation condition for this phase.
class InfeasiblePhase : public std::domain_error {
 public:
  explicit InfeasiblePhase(const std::string& what) : std::domain_error(what) {}
};

// Bracketing or bisection failed while solving theta*cot(theta) = a on a
// branch interval.
class BranchRootFailure : public std::runtime_error {
 public:
  explicit BranchRootFailure(const std::string& what)
      : std::runtime_error(what) {}
};

// Curve continuation left the admissible strip (a <= 1, or the mode ordering
// t - xi k1^2 > t - xi k2^2 > pi^2 broke down).
class CurveEscape : public std::runtime_error {
 public:
  explicit CurveEscape(const std::string& what) : std::runtime_error(what) {}
};

// No parameter on the two-mode curve closes the hyperbolic condition for the
// requested third mode.
class NoThirdMode : public std::runtime_error {
 public:
  explicit NoThirdMode(const std::string& what) : std::runtime_error(what) {}
};

// Mode triple collapses under gcd reduction (repeated entries, zeros, ...).
class DegenerateTriple : public std::invalid_argument {
 public:
  explicit DegenerateTriple(const std::string& what)
      : std::invalid_argument(what) {}
};

// Surface displacement reached 1 + eta <= 0 somewhere: the conformal-type
// change of variables is no longer a diffeomorphism.
class DomainCollapse : public std::runtime_error {
 public:
  explicit DomainCollapse(const std::string& what)
      : std::runtime_error(what) {}
};

// Field and grid resolutions disagree.
class GridMismatch : public std::invalid_argument {
 public:
  explicit GridMismatch(const std::string& what)
      : std::invalid_argument(what) {}
};

// Newton corrector failed to reach tolerance within the iteration cap.
class NewtonDivergence : public std::runtime_error {
 public:
  explicit NewtonDivergence(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace trimodal
