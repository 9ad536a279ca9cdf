#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "trimodal/dispersion.hpp"
#include "trimodal/errors.hpp"
#include "trimodal/grid.hpp"
#include "trimodal/kernel.hpp"
#include "trimodal/laminar.hpp"
#include "trimodal/operators.hpp"

using namespace trimodal;

namespace {
constexpr double kPi = std::numbers::pi;

Params make_params(double mu, double alpha, double lambda, double xi) {
  Params p;
  p.mu = mu;
  p.alpha = alpha;
  p.lambda = lambda;
  p.xi = xi;
  return p;
}

// Smooth banded even test field: a handful of cosine modes in q tensored
// with polynomials in s that vanish at s = 0 and s = 1.
WaveField smooth_even_field(const Grid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coef(-0.5, 0.5);
  WaveField w = zero_field(g);
  for (int k = 0; k < std::min(6, g.n_modes); ++k)
    w.eta_hat[k] = 0.05 * coef(rng);

  Eigen::MatrixXd modal = Eigen::MatrixXd::Zero(g.n_modes, g.n_s + 1);
  for (int k = 0; k < std::min(5, g.n_modes); ++k) {
    double c1 = coef(rng), c2 = coef(rng);
    for (int i = 0; i <= g.n_s; ++i) {
      double s = g.s_nodes[i];
      modal(k, i) = s * (1.0 - s) * (c1 + c2 * s);
    }
  }
  w.phi = g.cos_syn * modal;
  return w;
}

double sup(const ResidualPair& r) {
  double a = r.surface_hat.cwiseAbs().maxCoeff();
  double b = r.interior.cwiseAbs().maxCoeff();
  return a > b ? a : b;
}
}  // namespace

TEST_CASE("fd_weights reproduces classic stencils and is exact on powers") {
  Eigen::VectorXd x(3);
  x << -1.0, 0.0, 1.0;
  Eigen::VectorXd w = fd_weights(0.0, x, 2);
  CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(w[1] == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(w[2] == doctest::Approx(1.0).epsilon(1e-14));

  // 5-point weights differentiate s^3 exactly at an off-center point.
  Eigen::VectorXd y(5);
  y << 0.0, 0.1, 0.2, 0.3, 0.4;
  Eigen::VectorXd w1 = fd_weights(0.1, y, 1);
  double d = 0.0;
  for (int i = 0; i < 5; ++i) d += w1[i] * y[i] * y[i] * y[i];
  CHECK(d == doctest::Approx(3 * 0.01).epsilon(1e-11));
}

TEST_CASE("grid trig tables are mirror symmetric in exact floating point") {
  Grid g = build_grid(8, 16);
  CHECK(g.n_q == 24);
  for (int j = 1; j < g.n_q / 2; ++j) {
    for (int k = 0; k < g.n_modes; ++k) {
      CHECK(g.cos_syn(g.n_q - j, k) == g.cos_syn(j, k));
      CHECK(g.sin_syn(g.n_q - j, k) == -g.sin_syn(j, k));
    }
  }
}

TEST_CASE("cosine analysis inverts synthesis on the retained band") {
  Grid g = build_grid(12, 16);
  Eigen::MatrixXd eye =
      g.cos_ana * g.cos_syn - Eigen::MatrixXd::Identity(12, 12);
  CHECK(eye.cwiseAbs().maxCoeff() < 1e-13);

  Eigen::MatrixXd sine = g.sin_ana * g.sin_syn;
  // Row and column 0 vanish (no sine mode 0); the rest is the identity.
  for (int i = 1; i < 12; ++i) {
    for (int j = 1; j < 12; ++j) {
      double want = i == j ? 1.0 : 0.0;
      CHECK(std::abs(sine(i, j) - want) < 1e-13);
    }
  }
  CHECK(sine.row(0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("vertical derivative rows are high-order accurate") {
  Grid g = build_grid(4, 32);
  Eigen::VectorXd p7(g.n_s + 1), dp7(g.n_s + 1), ddp7(g.n_s + 1);
  for (int i = 0; i <= g.n_s; ++i) {
    double s = g.s_nodes[i];
    p7[i] = std::pow(s, 7);
    dp7[i] = 7 * std::pow(s, 6);
    ddp7[i] = 42 * std::pow(s, 5);
  }
  CHECK((g.d1 * p7 - dp7).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((g.d2 * p7 - ddp7).cwiseAbs().maxCoeff() < 1e-8);

  // Convergence on a stiff transcendental profile (large enough higher
  // derivatives that truncation dominates rounding on both grids).
  auto err = [](int n_s) {
    Grid gg = build_grid(4, n_s);
    Eigen::VectorXd f(n_s + 1), df(n_s + 1);
    for (int i = 0; i <= n_s; ++i) {
      double s = gg.s_nodes[i];
      f[i] = std::sin(20.0 * s);
      df[i] = 20.0 * std::cos(20.0 * s);
    }
    return (gg.d1 * f - df).cwiseAbs().maxCoeff();
  };
  double e32 = err(32), e64 = err(64);
  // The order-10 stencil's truncation on sin(20 s) at h = 1/31 is
  // (20 h)^10 ~ 1e-2; the ratio carries the order assertion.
  CHECK(e32 < 5e-2);
  CHECK(e64 < e32 / 100.0);  // order >= 8 at the boundary rows
}

TEST_CASE("spectral q-derivatives are exact on the band and parity-typed") {
  Grid g = build_grid(10, 16);
  Eigen::MatrixXd F(g.n_q, g.n_s + 1), dF(g.n_q, g.n_s + 1);
  for (int j = 0; j < g.n_q; ++j) {
    for (int i = 0; i <= g.n_s; ++i) {
      double q = g.q_nodes[j], s = g.s_nodes[i];
      F(j, i) = std::cos(3 * q) * (1.0 + s);
      dF(j, i) = -3 * std::sin(3 * q) * (1.0 + s);
    }
  }
  CHECK((g.dq_even(F) - dF).cwiseAbs().maxCoeff() < 1e-13);

  Eigen::MatrixXd G(g.n_q, g.n_s + 1), dG(g.n_q, g.n_s + 1),
      ddF(g.n_q, g.n_s + 1);
  for (int j = 0; j < g.n_q; ++j) {
    for (int i = 0; i <= g.n_s; ++i) {
      double q = g.q_nodes[j], s = g.s_nodes[i];
      G(j, i) = std::sin(5 * q) * (2.0 - s);
      dG(j, i) = 5 * std::cos(5 * q) * (2.0 - s);
      ddF(j, i) = -9 * std::cos(3 * q) * (1.0 + s);
    }
  }
  CHECK((g.dq_odd(G) - dG).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((g.dqq_even(F) - ddF).cwiseAbs().maxCoeff() < 1e-13);

  // Output of dq_even is odd about q = 0 exactly at mirrored nodes.
  Eigen::MatrixXd dFe = g.dq_even(F);
  for (int j = 1; j < g.n_q / 2; ++j)
    CHECK(dFe(g.n_q - j, 0) == -dFe(j, 0));
}

TEST_CASE("build_grid rejects undersized grids") {
  CHECK_THROWS_AS(build_grid(3, 64), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(4, 8), std::invalid_argument);
}

TEST_CASE("laminar states are exact zeros of the residual map") {
  Grid g = build_grid(16, 32);
  std::mt19937 rng(777u);
  std::uniform_real_distribution<double> mu_d(0.02, 2.0),
      al_d(-80.0, -0.5), lam_d(0.2, kPi - 0.2), xi_d(0.05, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    double mu = mu_d(rng) * (trial % 2 ? 1.0 : -1.0);
    Params p = make_params(mu, al_d(rng), lam_d(rng), xi_d(rng));
    ResidualPair r = eval_F(zero_field(g), p, g);
    CHECK(sup(r) < 1e-13);
  }
}

TEST_CASE("constant surface displacement has a closed-form residual") {
  Grid g = build_grid(8, 32);
  Params p = make_params(0.4, -12.0, 1.3, 0.9);
  LaminarFlow lam = laminar_constants(p);
  double eps = 0.07;

  WaveField w = zero_field(g);
  w.eta_hat[0] = eps;
  ResidualPair r = eval_F(w, p, g);

  double depth = 1.0 + eps;
  double want0 = 0.5 * psi0_s(p, 1.0) * psi0_s(p, 1.0) / (depth * depth) +
                 eps - lam.Q;
  CHECK(r.surface_hat[0] == doctest::Approx(want0).epsilon(1e-12));
  for (int k = 1; k < g.n_modes; ++k)
    CHECK(std::abs(r.surface_hat[k]) < 1e-13);

  for (int i = 0; i <= g.n_s; ++i) {
    double s = g.s_nodes[i];
    double want = psi0_ss(p, s) / (depth * depth) - p.alpha * psi0(p, s);
    for (int j = 0; j < g.n_q; j += 7)
      CHECK(r.interior(j, i) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("residuals of even fields carry no odd energy") {
  Grid g = build_grid(12, 32);
  Params p = make_params(0.5, -9.0, 1.1, 1.4);
  WaveField w = smooth_even_field(g, 101u);
  ResidualPair r = eval_F(w, p, g);
  double scale = std::max(1.0, r.interior.cwiseAbs().maxCoeff());
  Eigen::MatrixXd odd = g.sin_ana * r.interior;
  CHECK(odd.cwiseAbs().maxCoeff() < 1e-13 * scale);
}

TEST_CASE("surface collapse raises DomainCollapse") {
  Grid g = build_grid(8, 16);
  Params p = make_params(0.4, -3.0, 1.0, 1.0);
  WaveField w = zero_field(g);
  w.eta_hat[0] = -1.5;
  CHECK_THROWS_AS(eval_F(w, p, g), DomainCollapse);
  WaveField m = zero_field(g);
  m.eta_hat = Eigen::VectorXd::Zero(g.n_modes + 1);
  CHECK_THROWS_AS(eval_F(m, p, g), GridMismatch);
}

TEST_CASE("closed-form linearization matches a manual central difference") {
  Grid g = build_grid(10, 32);
  Params p = make_params(0.6, -14.0, 0.9, 1.2);
  WaveField dir = smooth_even_field(g, 33u);

  ResidualPair lin = eval_DwF(zero_field(g), dir, p, g);

  double h = 1e-6;
  WaveField plus = zero_field(g), minus = zero_field(g);
  plus += dir;
  plus *= h;
  minus += dir;
  minus *= -h;
  ResidualPair rp = eval_F(plus, p, g);
  ResidualPair rm = eval_F(minus, p, g);
  Eigen::VectorXd fd_s = (rp.surface_hat - rm.surface_hat) / (2 * h);
  Eigen::MatrixXd fd_i = (rp.interior - rm.interior) / (2 * h);

  double scale = std::max(1.0, sup(lin));
  CHECK((fd_s - lin.surface_hat).cwiseAbs().maxCoeff() < 1e-6 * scale);
  CHECK((fd_i - lin.interior).cwiseAbs().maxCoeff() < 1e-6 * scale);
}

TEST_CASE("residual expansion around zero is first order accurate") {
  // || F(h d) - F(0) - h DF(0)d || / h must shrink linearly in h; a wrong
  // closed-form linearization would make this plateau instead.
  Grid g = build_grid(10, 32);
  Params p = make_params(0.6, -14.0, 0.9, 1.2);
  WaveField dir = smooth_even_field(g, 34u);
  ResidualPair lin = eval_DwF(zero_field(g), dir, p, g);

  auto defect = [&](double h) {
    WaveField w = zero_field(g);
    w += dir;
    w *= h;
    ResidualPair r = eval_F(w, p, g);
    double a = (r.surface_hat - h * lin.surface_hat).cwiseAbs().maxCoeff();
    double b = (r.interior - h * lin.interior).cwiseAbs().maxCoeff();
    return std::max(a, b) / h;
  };

  double e2 = defect(1e-2), e3 = defect(1e-3), e4 = defect(1e-4);
  CHECK(e3 < 0.3 * e2);
  CHECK(e4 < 0.3 * e3);
}

TEST_CASE("eval_DwF away from the origin is a difference quotient") {
  Grid g = build_grid(8, 32);
  Params p = make_params(0.5, -6.0, 1.0, 0.8);
  WaveField base = smooth_even_field(g, 55u);
  WaveField dir = smooth_even_field(g, 56u);

  ResidualPair d = eval_DwF(base, dir, p, g);
  CHECK(sup(d) > 0.0);

  // Zero direction short-circuits to a zero residual.
  ResidualPair z = eval_DwF(base, zero_field(g), p, g);
  CHECK(sup(z) == 0.0);
}

TEST_CASE("apply_T lifts traces into admissible fields and invert_T undoes it") {
  Grid g = build_grid(10, 32);
  Params p = make_params(0.7, -11.0, 1.0, 1.0);

  // Banded raw interior function with a nonzero surface trace.
  Eigen::MatrixXd phi(g.n_q, g.n_s + 1);
  for (int j = 0; j < g.n_q; ++j)
    for (int i = 0; i <= g.n_s; ++i) {
      double q = g.q_nodes[j], s = g.s_nodes[i];
      phi(j, i) = std::cos(2 * q) * s * (1.3 - s) + 0.4 * std::cos(4 * q) * s;
    }

  WaveField w = apply_T(phi, p, g);
  // The lifted profile vanishes on both horizontal boundaries.
  CHECK(w.phi.col(0).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(w.phi.col(g.n_s).cwiseAbs().maxCoeff() < 1e-14);
  // eta absorbs the trace: eta = -phi|_{s=1}/psi0_s(1).
  Eigen::VectorXd trace_hat = g.cos_ana * phi.col(g.n_s);
  Eigen::VectorXd want = -trace_hat / psi0_s(p, 1.0);
  CHECK((w.eta_hat - want).cwiseAbs().maxCoeff() < 1e-13);

  Eigen::MatrixXd back = invert_T(w, p, g);
  CHECK((back - phi).cwiseAbs().maxCoeff() < 1e-12);

  // apply_R with the same eta reproduces apply_T.
  WaveField r = apply_R(w.eta_hat, phi, p, g);
  CHECK((r.eta_hat - w.eta_hat).cwiseAbs().maxCoeff() == 0.0);
  CHECK((r.phi - w.phi).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("kernel functions annihilate the linearized operator") {
  KernelSpec spec = attach_third_mode(6, 10, 15);
  Grid g = build_grid(64, 64);
  for (int j = 0; j < 3; ++j) {
    KernelFunction kf =
        make_kernel_function(spec.params, spec.k[static_cast<size_t>(j)], g);
    ResidualPair r = apply_L(kf.values, spec.params, g);
    // Backward error against the theta^2 * phi scale the interior rows
    // cancel.
    double th = spec.thetas[static_cast<size_t>(j)].theta;
    double scale = th * th * kf.values.cwiseAbs().maxCoeff();
    CHECK(sup(r) / scale < 1e-8);
  }
}

TEST_CASE("apply_L off the kernel reproduces the dispersion residual") {
  // For generic parameters the mode-k kernel profile built from the same
  // parameters still kills the interior part; the surface coefficient is
  //   sin*(theta_k)/theta_k * psi0_s(1) * kernel_condition_residual(p, k).
  Grid g = build_grid(12, 64);
  Params p = make_params(0.3, -20.0, 1.0, 0.8);
  for (int k : {3, 6}) {
    ThetaValue tv = theta(p, k);
    REQUIRE(tv.regime != Regime::Degenerate);
    KernelFunction kf = make_kernel_function(p, k, g);
    ResidualPair r = apply_L(kf.values, p, g);

    double scale = kf.values.cwiseAbs().maxCoeff();
    CHECK(r.interior.cwiseAbs().maxCoeff() < 1e-6 * scale);

    double sin_star = tv.regime == Regime::Hyperbolic ? std::sinh(tv.theta)
                                                      : std::sin(tv.theta);
    double want = sin_star / tv.theta * psi0_s(p, 1.0) *
                  kernel_condition_residual(p, k);
    CHECK(r.surface_hat[k] == doctest::Approx(want).epsilon(1e-6));
    for (int m = 0; m < g.n_modes; ++m) {
      if (m == k) continue;
      CHECK(std::abs(r.surface_hat[m]) < 1e-10 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("inner product is symmetric, definite, and band-diagonal") {
  KernelSpec spec = attach_third_mode(6, 10, 15);
  Grid g = build_grid(48, 64);

  WaveField a = smooth_even_field(g, 61u);
  WaveField b = smooth_even_field(g, 62u);
  CHECK(inner_product_Y(a, b, g) ==
        doctest::Approx(inner_product_Y(b, a, g)).epsilon(1e-13));
  CHECK(inner_product_Y(a, a, g) > 0.0);

  // Kernel fields of distinct modes are orthogonal; the q-space quadrature
  // cancels their product to rounding (zero in exact arithmetic).
  KernelFunction k6 = make_kernel_function(spec.params, 6, g);
  KernelFunction k10 = make_kernel_function(spec.params, 10, g);
  WaveField w6 = kernel_field(k6, g);
  WaveField w10 = kernel_field(k10, g);
  double cross = inner_product_Y(w6, w10, g);
  double norms = std::sqrt(inner_product_Y(w6, w6, g) *
                           inner_product_Y(w10, w10, g));
  CHECK(std::abs(cross) < 1e-15 * norms);

  Grid small = build_grid(8, 16);
  CHECK_THROWS_AS(inner_product_Y(a, zero_field(small), g), GridMismatch);
}

TEST_CASE("kernel self-pairing matches the closed-form integral") {
  KernelSpec spec = attach_third_mode(6, 10, 15);
  const Params& p = spec.params;

  auto exact_pairing = [&](const ThetaValue& tv) {
    double th = tv.theta;
    double integral, sin_star;
    if (tv.regime == Regime::Hyperbolic) {
      integral = (std::sinh(2 * th) / (4 * th) - 0.5) / (th * th);
      sin_star = std::sinh(th);
    } else {
      integral = (0.5 - std::sin(2 * th) / (4 * th)) / (th * th);
      sin_star = std::sin(th);
    }
    double eta_c = -(sin_star / th) / psi0_s(p, 1.0);
    return kPi * (integral + eta_c * eta_c);
  };

  auto numeric_pairing = [&](int k, int n_s) {
    Grid g = build_grid(48, n_s);
    KernelFunction kf = make_kernel_function(p, k, g);
    WaveField w = kernel_field(kf, g);
    return inner_product_Y(w, w, g);
  };

  for (int j = 0; j < 3; ++j) {
    int k = spec.k[static_cast<size_t>(j)];
    double exact = exact_pairing(spec.thetas[static_cast<size_t>(j)]);
    CHECK(numeric_pairing(k, 256) == doctest::Approx(exact).epsilon(1e-4));

    // Trapezoid error decays quadratically in the vertical step.
    double e64 = std::abs(numeric_pairing(k, 64) - exact);
    double e128 = std::abs(numeric_pairing(k, 128) - exact);
    CHECK(e64 / e128 > 3.3);
    CHECK(e64 / e128 < 4.7);
  }
}

TEST_CASE("project_Z splits fields against the kernel directions") {
  KernelSpec spec = attach_third_mode(6, 10, 15);
  Grid g = build_grid(48, 64);
  std::vector<KernelFunction> kernels;
  for (int k : spec.k) kernels.push_back(make_kernel_function(spec.params, k, g));

  // A kernel field projects to a unit amplitude on its own slot.
  WaveField w6 = kernel_field(kernels[0], g);
  ModeProjection pr = project_Z(w6, kernels, g);
  CHECK(pr.amplitudes[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(pr.amplitudes[1]) < 1e-14);
  CHECK(std::abs(pr.amplitudes[2]) < 1e-14);
  CHECK(pr.remainder.sup_norm() < 1e-12 * w6.sup_norm());

  // Generic field: remainder is Y-orthogonal to every kernel direction and
  // re-projection of the remainder vanishes.
  WaveField w = smooth_even_field(g, 91u);
  ModeProjection px = project_Z(w, kernels, g);
  for (size_t j = 0; j < kernels.size(); ++j) {
    WaveField wt = kernel_field(kernels[j], g);
    double raw = std::abs(inner_product_Y(w, wt, g));
    CHECK(std::abs(inner_product_Y(px.remainder, wt, g)) <
          1e-10 * std::max(1.0, raw));
  }
  ModeProjection again = project_Z(px.remainder, kernels, g);
  for (double c : again.amplitudes) CHECK(std::abs(c) < 1e-10);
}
