#include "trimodal/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "trimodal/dispersion.hpp"
#include "trimodal/errors.hpp"

namespace trimodal {

namespace {

constexpr double kPi = std::numbers::pi;

// theta*cot(theta) on the branch interval (n*pi, n*pi + pi/2) decreases from
// +infinity to 0, so theta*cot(theta) = a has exactly one root there for
// a > 0. Plain bisection; the bracket is safe by monotonicity.
double solve_branch(double a, int n) {
  if (!(a > 0.0))
    throw BranchRootFailure("solve_branch: need a > 0, got " +
                            std::to_string(a));
  double lo = n * kPi + 1e-9;
  double hi = n * kPi + kPi / 2.0;
  auto val = [a](double th) { return th * std::cos(th) / std::sin(th) - a; };
  double flo = val(lo);
  if (flo < 0.0)
    throw BranchRootFailure("solve_branch: bracket lost at theta = " +
                            std::to_string(lo));
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (val(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Hyperbolic counterpart: g(a) = theta3(a)*coth(theta3(a)) - a where
// theta3^2 = xi(a)*k3^2 - t(a) along the two-mode curve. Returns NaN when
// theta3^2 <= 0 (third mode not hyperbolic at this a).
double third_mode_gap(int k1, int k2, int k3, double a) {
  const CurvePoint p = find_two_dim_seed(k1, k2, a);
  const double th3sq = p.xi * k3 * k3 - p.t;
  if (!(th3sq > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  const double th3 = std::sqrt(th3sq);
  const double coth = th3 > kCothSaturation
                          ? 1.0
                          : 1.0 + 2.0 / std::expm1(2.0 * th3);
  return th3 * coth - a;
}

// Scans a on a 512-point log grid over (1, 1e4] for the first sign change of
// the gap and bisects it to 1e-13 relative width. With nan_is_negative set, a
// NaN gap (third mode not hyperbolic) may close a bracket: theta3*coth(theta3)
// tends to 1 as theta3^2 -> 0+, so the gap approaches 1 - a < 0 at every
// boundary of the undefined region and the zero crossing sits strictly inside
// the finite side. Returns NaN when no bracket is found.
double scan_third_mode(int k1, int k2, int k3, bool nan_is_negative) {
  const int n_scan = 512;
  const double lo = 1.0 + 1e-3;
  const double hi = 1e4;
  double a_prev = lo;
  double g_prev = third_mode_gap(k1, k2, k3, lo);
  for (int i = 1; i < n_scan; ++i) {
    const double x = static_cast<double>(i) / (n_scan - 1);
    const double a_cur = lo * std::pow(hi / lo, x);
    const double g_cur = third_mode_gap(k1, k2, k3, a_cur);
    const bool closes = std::isfinite(g_cur) ? g_cur <= 0.0 : nan_is_negative;
    if (std::isfinite(g_prev) && g_prev > 0.0 && closes) {
      double a_lo = a_prev, a_hi = a_cur;
      while (a_hi - a_lo > 1e-13 * (0.5 * (a_lo + a_hi))) {
        const double mid = 0.5 * (a_lo + a_hi);
        (third_mode_gap(k1, k2, k3, mid) > 0.0 ? a_lo : a_hi) = mid;
      }
      // a_lo always sits on the finite positive side; prefer the interval
      // midpoint whenever the gap is defined there.
      const double a_mid = 0.5 * (a_lo + a_hi);
      return std::isfinite(third_mode_gap(k1, k2, k3, a_mid)) ? a_mid : a_lo;
    }
    a_prev = a_cur;
    g_prev = g_cur;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

KernelSpec certify(int k1, int k2, int k3, double a, double t, double xi);

}  // namespace

std::array<double, 2> curve_thetas(const CurvePoint& p) {
  const double t1 = p.t - p.xi * p.k1 * p.k1;
  const double t2 = p.t - p.xi * p.k2 * p.k2;
  if (!(t1 > 0.0) || !(t2 > 0.0))
    throw CurveEscape("curve_thetas: t - xi*k^2 must stay positive");
  return {std::sqrt(t1), std::sqrt(t2)};
}

void validate(const CurvePoint& p) {
  if (!(p.k1 >= 1) || !(p.k2 > p.k1))
    throw CurveEscape("curve point: need k2 > k1 >= 1");
  if (!(p.xi > 0.0)) throw CurveEscape("curve point: xi must be positive");
  const double t1 = p.t - p.xi * p.k1 * p.k1;
  const double t2 = p.t - p.xi * p.k2 * p.k2;
  if (!(t1 > t2) || !(t2 > kPi * kPi))
    throw CurveEscape("curve point: ordering t - xi*k1^2 > t - xi*k2^2 > pi^2 "
                      "violated");
  if (!(p.a > 1.0))
    throw CurveEscape("curve point: a must exceed 1");
}

CurvePoint find_two_dim_seed(int k1, int k2, double a_target) {
  if (k1 < 1 || k2 <= k1)
    throw std::invalid_argument("find_two_dim_seed: need k2 > k1 >= 1");
  if (!(a_target > 1.0))
    throw std::invalid_argument("find_two_dim_seed: need a > 1");
  // theta1 on the second branch, theta2 on the first: theta1 > theta2 pairs
  // with k1 < k2 so that xi = (theta1^2 - theta2^2)/(k2^2 - k1^2) > 0.
  const double th1 = solve_branch(a_target, 2);
  const double th2 = solve_branch(a_target, 1);
  const double ksq1 = static_cast<double>(k1) * k1;
  const double ksq2 = static_cast<double>(k2) * k2;
  CurvePoint p;
  p.k1 = k1;
  p.k2 = k2;
  p.a = a_target;
  p.t = (ksq2 * th1 * th1 - ksq1 * th2 * th2) / (ksq2 - ksq1);
  p.xi = (th1 * th1 - th2 * th2) / (ksq2 - ksq1);
  validate(p);
  return p;
}

double curve_dtdxi(const CurvePoint& p) {
  const auto th = curve_thetas(p);
  const double a1 = th[0] * std::cos(th[0]) / std::sin(th[0]);
  const double a2 = th[1] * std::cos(th[1]) / std::sin(th[1]);
  const double a = 0.5 * (a1 + a2);
  const double asq = a * a - a;
  return (th[0] * th[0] * th[1] * th[1] + p.t * asq) / (p.xi * asq);
}

namespace {

// h(t) = theta1 cot theta1 - theta2 cot theta2 at fixed xi; finishes the
// point from a converged t: a is the mean of the two (equal) theta cot theta
// values and validate enforces the chart bounds.
CurvePoint finish_point(int k1, int k2, double xi, double t) {
  CurvePoint p;
  p.k1 = k1;
  p.k2 = k2;
  p.xi = xi;
  p.t = t;
  const auto th = curve_thetas(p);
  p.a = 0.5 * (th[0] * std::cos(th[0]) / std::sin(th[0]) +
               th[1] * std::cos(th[1]) / std::sin(th[1]));
  validate(p);
  return p;
}

// Newton in t at fixed xi on h(t), using
// dh/dt = sum_j ± (a_j - a_j^2 - theta_j^2) / (2 theta_j^2) with
// a_j = theta_j cot theta_j. When Newton fails (wanders out of the window or
// stalls), falls back to a dense scan of the branch window
//   theta1 in (2 pi, 5 pi/2), theta2 in (pi, 3 pi/2)
// for the sign change of h nearest the predicted t; no sign change in the
// whole window means the curve does not extend to this xi.
CurvePoint correct_t(int k1, int k2, double xi, double t_guess) {
  const double ksq1 = static_cast<double>(k1) * k1;
  const double ksq2 = static_cast<double>(k2) * k2;

  try {
    CurvePoint p;
    p.k1 = k1;
    p.k2 = k2;
    p.xi = xi;
    p.t = t_guess;
    for (int it = 0; it < 20; ++it) {
      const auto th = curve_thetas(p);
      const double a1 = th[0] * std::cos(th[0]) / std::sin(th[0]);
      const double a2 = th[1] * std::cos(th[1]) / std::sin(th[1]);
      const double h = a1 - a2;
      const double dh =
          (a1 - a1 * a1 - th[0] * th[0]) / (2.0 * th[0] * th[0]) -
          (a2 - a2 * a2 - th[1] * th[1]) / (2.0 * th[1] * th[1]);
      const double dt = -h / dh;
      p.t += dt;
      if (std::abs(dt) < 1e-12 * std::max(1.0, std::abs(p.t)) &&
          std::abs(h) < 1e-11)
        return finish_point(k1, k2, xi, p.t);
    }
  } catch (const CurveEscape&) {
    // Newton left the window; resolved by the scan below. A genuine escape
    // (root outside the chart) is rediscovered by finish_point afterwards.
  }

  const double t_lo = std::max(xi * ksq1 + 4.0 * kPi * kPi,
                               xi * ksq2 + kPi * kPi);
  const double t_hi = std::min(xi * ksq1 + 6.25 * kPi * kPi,
                               xi * ksq2 + 2.25 * kPi * kPi);
  if (!(t_hi > t_lo))
    throw CurveEscape("trace_curve: branch windows are disjoint at xi = " +
                      std::to_string(xi));
  const double inset = 1e-9 * (t_hi - t_lo);
  auto h_of = [&](double t) {
    const double th1 = std::sqrt(t - xi * ksq1);
    const double th2 = std::sqrt(t - xi * ksq2);
    return th1 * std::cos(th1) / std::sin(th1) -
           th2 * std::cos(th2) / std::sin(th2);
  };
  const int n = 2048;
  double best_lo = std::numeric_limits<double>::quiet_NaN();
  double best_hi = 0.0;
  double best_dist = std::numeric_limits<double>::infinity();
  double t_prev = t_lo + inset;
  double h_prev = h_of(t_prev);
  for (int i = 1; i <= n; ++i) {
    const double t_cur =
        t_lo + inset + (t_hi - t_lo - 2.0 * inset) * i / n;
    const double h_cur = h_of(t_cur);
    if (std::isfinite(h_prev) && std::isfinite(h_cur) &&
        h_prev * h_cur <= 0.0) {
      const double dist = std::abs(0.5 * (t_prev + t_cur) - t_guess);
      if (dist < best_dist) {
        best_dist = dist;
        best_lo = t_prev;
        best_hi = t_cur;
      }
    }
    t_prev = t_cur;
    h_prev = h_cur;
  }
  if (!std::isfinite(best_lo))
    throw CurveEscape("trace_curve: curve does not extend to xi = " +
                      std::to_string(xi));
  double lo = best_lo, hi = best_hi;
  double h_lo = h_of(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::abs(hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double h_mid = h_of(mid);
    if (h_lo * h_mid <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      h_lo = h_mid;
    }
  }
  return finish_point(k1, k2, xi, 0.5 * (lo + hi));
}

}  // namespace

CurvePoint trace_curve(int k1, int k2, const CurvePoint& seed,
                       double xi_target) {
  validate(seed);
  if (!(xi_target > 0.0))
    throw CurveEscape("trace_curve: xi_target must be positive");
  constexpr double kStep = 1e-3;
  CurvePoint p = seed;
  while (p.xi != xi_target) {
    const double remaining = xi_target - p.xi;
    const double h = std::clamp(remaining, -kStep, kStep);
    // RK4 predictor on dt/dxi.
    auto rhs = [&](double xi, double t) {
      CurvePoint q;
      q.k1 = k1;
      q.k2 = k2;
      q.xi = xi;
      q.t = t;
      return curve_dtdxi(q);
    };
    const double xi_next = std::abs(remaining) <= kStep ? xi_target : p.xi + h;
    double t_pred = p.t;
    try {
      const double s1 = rhs(p.xi, p.t);
      const double s2 = rhs(p.xi + 0.5 * h, p.t + 0.5 * h * s1);
      const double s3 = rhs(p.xi + 0.5 * h, p.t + 0.5 * h * s2);
      const double s4 = rhs(p.xi + h, p.t + h * s3);
      t_pred = p.t + h / 6.0 * (s1 + 2.0 * s2 + 2.0 * s3 + s4);
    } catch (const CurveEscape&) {
      // A predictor stage left the window (the tangent blows up like
      // 1/(a - 1) near the chart edge); the corrector's windowed scan
      // recovers from the previous t.
    }
    p = correct_t(k1, k2, xi_next, t_pred);
  }
  return p;
}

namespace {

KernelSpec certify(int k1, int k2, int k3, double a, double t, double xi) {
  KernelSpec spec;
  spec.k = {k1, k2, k3};
  spec.a = a;
  const double theta0 = std::sqrt(t);
  const double lambda = kPi / 2.0;
  spec.params.alpha = -t;
  spec.params.xi = xi;
  spec.params.lambda = lambda;
  spec.params.mu = recover_mu(a, theta0, lambda);
  validate(spec.params);

  for (int j = 0; j < 3; ++j) {
    spec.thetas[static_cast<size_t>(j)] =
        theta(spec.params, spec.k[static_cast<size_t>(j)]);
    spec.residuals[static_cast<size_t>(j)] = kernel_condition_residual(
        spec.params, spec.k[static_cast<size_t>(j)]);
  }

  // Exact-dimension scan: everything up to k_max; beyond it theta_k > theta3
  // is hyperbolic with theta*coth monotone increasing, so no further roots.
  const double th3 = spec.thetas[2].theta;
  spec.k_max_scanned =
      static_cast<int>(std::ceil(std::sqrt((t + th3 * th3) / xi))) + 64;
  int dim = 0;
  for (int k = 1; k <= spec.k_max_scanned; ++k) {
    double r;
    try {
      r = kernel_condition_residual(spec.params, k);
    } catch (const PoleError&) {
      continue;  // a pole cannot be a kernel mode
    }
    if (std::abs(r) < 1e-9) ++dim;
  }
  spec.exact_dimension = dim;
  return spec;
}

}  // namespace

KernelSpec attach_third_mode(int k1, int k2, int k3) {
  if (k1 < 1 || k2 <= k1 || k3 <= k2)
    throw std::invalid_argument("attach_third_mode: need k3 > k2 > k1 >= 1");

  const double ksq1 = static_cast<double>(k1) * k1;
  const double ksq2 = static_cast<double>(k2) * k2;
  const double ksq3 = static_cast<double>(k3) * k3;
  const double ratio = (ksq3 - ksq2) / (ksq3 - ksq1);

  // For ratio > 9/16 the branch windows theta1 > 2*pi, theta2 < 3*pi/2 force
  // theta2^2/theta1^2 < 9/16 < ratio, so theta3^2 > 0 at every a and the gap
  // is defined globally; a NaN there would indicate a defect, so brackets
  // must close on finite values. Below the threshold theta3^2 may change sign
  // along the branch and a NaN gap legitimately closes a bracket.
  const bool gap_global = ratio > 9.0 / 16.0;
  const double a = scan_third_mode(k1, k2, k3, !gap_global);
  if (!std::isfinite(a))
    throw NoThirdMode("attach_third_mode: no hyperbolic crossing for k3 = " +
                      std::to_string(k3));
  const CurvePoint p = find_two_dim_seed(k1, k2, a);
  return certify(k1, k2, k3, a, p.t, p.xi);
}

double crossing_f(const ThetaValue& tv) {
  const double th = tv.theta;
  switch (tv.regime) {
    case Regime::Trigonometric: {
      const double s = std::sin(th);
      return -(kPi / 2.0) * (th - std::cos(th) * s) / (th * th * th);
    }
    case Regime::Hyperbolic: {
      const double s = std::sinh(th);
      return (kPi / 2.0) * (th - std::cosh(th) * s) / (th * th * th);
    }
    default:
      // Limit of both formulas as theta -> 0: -(pi/2)*(theta^3*2/3)/theta^3.
      return -kPi / 3.0;
  }
}

double crossing_ftilde(const ThetaValue& tv, double a) {
  const double th = tv.theta;
  if (tv.regime == Regime::Hyperbolic) {
    const double s = std::sinh(th);
    return a * s * s / ((a - 1.0) - s * s);
  }
  const double s = std::sin(th);
  return a * s * s / (-(a - 1.0) - s * s);
}

TransversalityReport transversality(const KernelSpec& spec) {
  TransversalityReport rep;
  for (int j = 0; j < 3; ++j) {
    const auto& tv = spec.thetas[static_cast<size_t>(j)];
    rep.f_values[static_cast<size_t>(j)] = crossing_f(tv);
    rep.ftilde_values[static_cast<size_t>(j)] = crossing_ftilde(tv, spec.a);
  }
  const double ksq1 = static_cast<double>(spec.k[0]) * spec.k[0];
  const double ksq2 = static_cast<double>(spec.k[1]) * spec.k[1];
  const double ksq3 = static_cast<double>(spec.k[2]) * spec.k[2];
  const double term1 = (ksq2 - ksq1) * rep.ftilde_values[2];
  const double term2 = (ksq1 - ksq3) * rep.ftilde_values[1];
  const double term3 = (ksq3 - ksq2) * rep.ftilde_values[0];
  rep.bracketed_sum = term1 + term2 + term3;
  rep.margin =
      1e-9 * (std::abs(term1) + std::abs(term2) + std::abs(term3));
  rep.nonzero = std::abs(rep.bracketed_sum) > rep.margin;
  rep.all_f_negative = rep.f_values[0] < 0.0 && rep.f_values[1] < 0.0 &&
                       rep.f_values[2] < 0.0;
  rep.ordering_ok = rep.ftilde_values[2] < rep.ftilde_values[0] &&
                    rep.ftilde_values[0] < rep.ftilde_values[1] &&
                    rep.ftilde_values[1] < 0.0;
  rep.ftilde3_below_minus_one = rep.ftilde_values[2] < -1.0;
  return rep;
}

}  // namespace trimodal
