#pragma once

#include <array>

#include "trimodal/params.hpp"

namespace trimodal {

// A point on the two-mode kernel curve for wavenumbers (k1, k2): parameters
// (xi, t = |alpha|) at which both trigonometric modes satisfy the kernel
// condition theta*cot(theta) = a with theta1 in (2pi, 5pi/2) and theta2 in
// (pi, 3pi/2).
struct CurvePoint {
  double xi = 0.0;
  double t = 0.0;
  double a = 0.0;  // common value theta_j*cot(theta_j)
  int k1 = 0;
  int k2 = 0;
};

// Checks the defining bracket and ordering; throws CurveEscape on violation.
void validate(const CurvePoint& p);

// Trigonometric frequencies of a curve point: theta_j = sqrt(t - xi*k_j^2).
std::array<double, 2> curve_thetas(const CurvePoint& p);

// Closed-form two-mode kernel point with theta_j*cot(theta_j) = a_target on
// the branches above; t and xi then solve the linear pair
// t - xi*k_j^2 = theta_j^2 exactly. Requires k2 > k1 >= 1, a_target > 1.
CurvePoint find_two_dim_seed(int k1, int k2, double a_target);

// Tangent dt/dxi of the kernel curve:
//   (theta1^2 theta2^2 + t(a^2 - a)) / (xi (a^2 - a)),
// evaluated with a = mean of the two theta*cot values. Always > t/xi.
double curve_dtdxi(const CurvePoint& p);

// Predictor-corrector continuation of the curve to xi_target: RK4 steps of
// size <= 1e-3 on dt/dxi followed by a Newton solve of
// theta1*cot(theta1) = theta2*cot(theta2) in t at fixed xi.
// Throws CurveEscape when a <= 1 or theta2^2 <= pi^2 along the way.
CurvePoint trace_curve(int k1, int k2, const CurvePoint& seed,
                       double xi_target);

// A certified three-mode kernel: parameters at which exactly the modes
// k = (k1, k2, k3) solve the kernel condition, the first two trigonometric
// and the third hyperbolic.
struct KernelSpec {
  std::array<int, 3> k{};
  Params params;  // lambda = pi/2, mu = 1/(theta0*sqrt(a))
  std::array<ThetaValue, 3> thetas{};
  double a = 0.0;
  std::array<double, 3> residuals{};
  // Number of kernel modes found scanning k = 1..k_max_scanned; 3 once
  // certified, -1 if certification was not run.
  int exact_dimension = -1;
  int k_max_scanned = 0;
};

// Locates the unique point on the (k1, k2) curve where mode k3 becomes
// hyperbolic-resonant (theta3*coth(theta3) = a), recovers mu at lambda =
// pi/2, and certifies the kernel dimension by scanning all modes up to
// k_max = ceil(sqrt((t + theta3^2)/xi)) + 64. Requires k3 > k2 > k1 >= 1.
// Throws NoThirdMode when the condition has no root on the curve.
KernelSpec attach_third_mode(int k1, int k2, int k3);

// Crossing data of the three kernel branches:
//   f_j      = d/da [theta_cot_star(theta_j) - a] along the curve (all < 0
//              at a nondegenerate crossing),
//   ftilde_j = a*sin*^2(theta_j) / (±(a-1) - sin*^2(theta_j)),
//   bracketed_sum = (k2^2-k1^2) ftilde3 + (k1^2-k3^2) ftilde2
//                 + (k3^2-k2^2) ftilde1,
// whose sign controls transversality of the third branch.
struct TransversalityReport {
  std::array<double, 3> f_values{};
  std::array<double, 3> ftilde_values{};
  double bracketed_sum = 0.0;
  double margin = 0.0;  // 1e-9 * sum of |terms| of the bracketed sum
  bool nonzero = false;
  bool all_f_negative = false;
  bool ordering_ok = false;  // ftilde3 < ftilde1 < ftilde2 < 0
  bool ftilde3_below_minus_one = false;

  bool passed() const {
    return nonzero && all_f_negative && ordering_ok && ftilde3_below_minus_one &&
           bracketed_sum < 0.0;
  }
};

TransversalityReport transversality(const KernelSpec& spec);

// f_j and ftilde_j for a single mode (exposed for the determinant tests).
double crossing_f(const ThetaValue& tv);
double crossing_ftilde(const ThetaValue& tv, double a);

}  // namespace trimodal
