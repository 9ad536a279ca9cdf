#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace trimodal {

// Laminar parameter quadruple. The background shear is psi0(s) =
// mu*cos(theta0*(s-1) + lambda) with theta0 = sqrt(-alpha), so the constraints
// are: mu != 0 (nontrivial shear), alpha < 0 (affine vorticity with
// oscillatory profile), sin(lambda) != 0 (nonzero surface slope of psi0), and
// xi > 0 (xi is the squared fundamental wavenumber).
struct Params {
  double mu = 1.0;
  double alpha = -1.0;
  double lambda = std::numbers::pi / 2;
  double xi = 1.0;

  // t = |alpha| parametrizes the kernel curve together with xi.
  double t() const { return -alpha; }
  double theta0() const { return std::sqrt(-alpha); }
};

inline void validate(const Params& p) {
  if (!(p.mu != 0.0) || !std::isfinite(p.mu))
    throw std::invalid_argument("params: mu must be finite and nonzero");
  if (!(p.alpha < 0.0) || !std::isfinite(p.alpha))
    throw std::invalid_argument("params: alpha must be finite and negative");
  if (!(p.xi > 0.0) || !std::isfinite(p.xi))
    throw std::invalid_argument("params: xi must be finite and positive");
  if (!std::isfinite(p.lambda) || std::sin(p.lambda) == 0.0)
    throw std::invalid_argument("params: sin(lambda) must be nonzero");
}

// Sign of alpha + xi*k^2 decides whether the vertical kernel profile for mode
// k is trigonometric (negative), hyperbolic (positive), or degenerate
// (vanishing to relative precision).
enum class Regime { Trigonometric, Hyperbolic, Degenerate };

struct ThetaValue {
  int k = 0;
  double theta = 0.0;  // sqrt(|alpha + xi*k^2|), >= 0
  Regime regime = Regime::Degenerate;
};

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Trigonometric: return "trigonometric";
    case Regime::Hyperbolic: return "hyperbolic";
    default: return "degenerate";
  }
}

}  // namespace trimodal
