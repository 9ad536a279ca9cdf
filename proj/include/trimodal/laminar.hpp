#pragma once

#include <cmath>

#include "trimodal/params.hpp"

namespace trimodal {

// Background laminar stream function on the unit strip,
//   psi0(s) = mu * cos(theta0*(s - 1) + lambda),
// which satisfies psi0'' = alpha * psi0. Derivatives are closed-form; no
// numerical differentiation is involved, so the laminar state annihilates the
// water-wave residual to rounding. None of this depends on xi.
inline double psi0(const Params& p, double s) {
  return p.mu * std::cos(p.theta0() * (s - 1.0) + p.lambda);
}

inline double psi0_s(const Params& p, double s) {
  const double th0 = p.theta0();
  return -p.mu * th0 * std::sin(th0 * (s - 1.0) + p.lambda);
}

// Written as alpha*psi0 (not -mu*theta0^2*cos(...)) so that the interior
// residual psi0_ss - alpha*psi0 of the flat state is exactly zero in floating
// point.
inline double psi0_ss(const Params& p, double s) {
  return p.alpha * psi0(p, s);
}

// Derived constants of the laminar state:
//   Q  Bernoulli constant, psi0'(1)^2 / 2,
//   m1 surface value psi0(1) = mu*cos(lambda),
//   m0 bed value psi0(0) = mu*cos(lambda - theta0).
struct LaminarFlow {
  Params params;
  double Q = 0.0;
  double m0 = 0.0;
  double m1 = 0.0;

  double value(double s) const { return psi0(params, s); }
  double slope(double s) const { return psi0_s(params, s); }
  double curvature(double s) const { return psi0_ss(params, s); }
};

inline LaminarFlow laminar_constants(const Params& p) {
  validate(p);
  LaminarFlow f;
  f.params = p;
  const double sp = p.mu * p.theta0() * std::sin(p.lambda);
  f.Q = 0.5 * sp * sp;
  f.m1 = p.mu * std::cos(p.lambda);
  f.m0 = p.mu * std::cos(p.lambda - p.theta0());
  return f;
}

}  // namespace trimodal
