#pragma once

#include "trimodal/params.hpp"

namespace trimodal {

// |alpha + xi*k^2| below this fraction of max(|alpha|, xi*k^2) counts as a
// degenerate (theta = 0) mode.
inline constexpr double kDegenerateRelTol = 1e-12;

// Guard radius around cotangent poles theta = n*pi, n >= 1.
inline constexpr double kPoleGuard = 1e-9;

// theta*coth(theta) is 1 to double precision beyond this point; returning 1
// exactly avoids overflow in cosh/sinh for large hyperbolic modes.
inline constexpr double kCothSaturation = 20.0;

// Vertical frequency of mode k at parameters p.
ThetaValue theta(const Params& p, int k);

// theta*cot(theta) / theta*coth(theta) / 1 according to regime, with a series
// branch near theta = 0 so the three regimes join continuously. Throws
// PoleError in the trigonometric regime within kPoleGuard of n*pi (n >= 1).
double theta_cot_star(const ThetaValue& tv);

// Right-hand side of the kernel condition:
//   1/(mu^2 theta0^2 sin^2 lambda) + theta0 cot(lambda).
double bifurcation_rhs(const Params& p);

// theta_cot_star(theta(p, k)) - bifurcation_rhs(p); zero iff cos(k q)-modes
// enter the linearized kernel.
double kernel_condition_residual(const Params& p, int k);

// Amplitude mu > 0 making bifurcation_rhs equal a, given theta0 and lambda.
// Throws InfeasiblePhase when a - theta0*cot(lambda) <= 0.
double recover_mu(double a, double theta0, double lambda);

}  // namespace trimodal
