#include "trimodal/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "trimodal/errors.hpp"

namespace trimodal {

namespace {

// theta*cot(theta) and theta*coth(theta) share the expansion
// 1 -/+ theta^2/3 - theta^4/45 -/+ 2 theta^6/945; below this cutoff the
// truncation error is ~1e-24, far under the 1e-11 continuity requirement at
// the regime boundary.
constexpr double kSeriesCutoff = 1e-4;

double theta_cot_series(double th, double sign) {
  const double t2 = th * th;
  return 1.0 + sign * t2 / 3.0 - t2 * t2 / 45.0 + sign * 2.0 * t2 * t2 * t2 / 945.0;
}

}  // namespace

ThetaValue theta(const Params& p, int k) {
  const double quad = p.xi * static_cast<double>(k) * static_cast<double>(k);
  const double d = p.alpha + quad;
  const double scale = std::max(std::abs(p.alpha), quad);
  ThetaValue tv;
  tv.k = k;
  tv.theta = std::sqrt(std::abs(d));
  if (std::abs(d) < kDegenerateRelTol * scale) {
    tv.regime = Regime::Degenerate;
  } else {
    tv.regime = d < 0.0 ? Regime::Trigonometric : Regime::Hyperbolic;
  }
  return tv;
}

double theta_cot_star(const ThetaValue& tv) {
  const double th = tv.theta;
  switch (tv.regime) {
    case Regime::Degenerate:
      return 1.0;
    case Regime::Trigonometric: {
      const double n = std::round(th / std::numbers::pi);
      if (n >= 1.0 && std::abs(th - n * std::numbers::pi) < kPoleGuard)
        throw PoleError("theta_cot_star: theta = " + std::to_string(th) +
                        " within guard distance of a cotangent pole");
      if (th < kSeriesCutoff) return theta_cot_series(th, -1.0);
      return th * std::cos(th) / std::sin(th);
    }
    case Regime::Hyperbolic:
    default: {
      if (th < kSeriesCutoff) return theta_cot_series(th, +1.0);
      // coth(theta) rounds to 1 beyond the saturation point, so theta*coth
      // rounds to theta.
      if (th > kCothSaturation) return th;
      // coth = 1 + 2/(e^{2 theta} - 1), accurate for small theta too.
      return th * (1.0 + 2.0 / std::expm1(2.0 * th));
    }
  }
}

double bifurcation_rhs(const Params& p) {
  const double th0 = p.theta0();
  const double s = std::sin(p.lambda);
  return 1.0 / (p.mu * p.mu * th0 * th0 * s * s) +
         th0 * std::cos(p.lambda) / s;
}

double kernel_condition_residual(const Params& p, int k) {
  return theta_cot_star(theta(p, k)) - bifurcation_rhs(p);
}

double recover_mu(double a, double theta0, double lambda) {
  const double d = a - theta0 * std::cos(lambda) / std::sin(lambda);
  if (!(d > 0.0))
    throw InfeasiblePhase("recover_mu: a - theta0*cot(lambda) = " +
                          std::to_string(d) + " is not positive");
  return 1.0 / (theta0 * std::abs(std::sin(lambda)) * std::sqrt(d));
}

}  // namespace trimodal
