#include "trimodal/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "trimodal/dispersion.hpp"
#include "trimodal/errors.hpp"
#include "trimodal/laminar.hpp"

namespace trimodal {

namespace {

// Laminar profile and derivatives tabulated on the s-nodes (row vectors).
struct LaminarTable {
  Eigen::RowVectorXd value, slope, curvature;
  double slope1 = 0.0;  // psi0_s at s = 1
};

LaminarTable tabulate_laminar(const Params& p, const Grid& g) {
  LaminarTable t;
  const int n = g.n_s + 1;
  t.value.resize(n);
  t.slope.resize(n);
  t.curvature.resize(n);
  for (int i = 0; i < n; ++i) {
    const double s = g.s_nodes(i);
    t.value(i) = psi0(p, s);
    t.slope(i) = psi0_s(p, s);
    t.curvature(i) = psi0_ss(p, s);
  }
  t.slope1 = t.slope(n - 1);
  return t;
}

double modal_weight(int k) {
  return k == 0 ? 2.0 * std::numbers::pi : std::numbers::pi;
}

}  // namespace

ResidualPair eval_F(const WaveField& w, const Params& p, const Grid& g) {
  check_grid(w, g, "eval_F");
  const LaminarTable lam = tabulate_laminar(p, g);
  const int last = g.n_s;

  const Eigen::ArrayXd eta = g.eta_values(w.eta_hat).array();
  const Eigen::ArrayXd eta_q = g.eta_q_values(w.eta_hat).array();
  const Eigen::ArrayXd depth = 1.0 + eta;
  if (depth.minCoeff() <= 0.0)
    throw DomainCollapse("eval_F: 1 + eta vanishes on the grid");

  const Eigen::MatrixXd phi_s = w.phi * g.d1.transpose();
  const Eigen::MatrixXd phi_ss = w.phi * g.d2.transpose();
  const Eigen::MatrixXd phi_q = g.dq_even(w.phi);

  // W = psi0_s + phi_s, broadcast over q rows.
  Eigen::ArrayXXd big_w = phi_s.array();
  big_w.rowwise() += lam.slope.array();

  const Eigen::ArrayXd slope_fac = eta_q / depth;
  const Eigen::ArrayXd depth_sq = depth * depth;
  const Eigen::Array<double, 1, Eigen::Dynamic> s_row =
      g.s_nodes.transpose().array();

  // u = phi_q - (s eta_q / (1+eta)) * W.
  Eigen::ArrayXXd u = big_w;
  u.colwise() *= slope_fac;
  u.rowwise() *= s_row;
  u = phi_q.array() - u;

  const Eigen::MatrixXd u_mat = u.matrix();
  const Eigen::MatrixXd u_q = g.dq_odd(u_mat);
  const Eigen::MatrixXd u_s = u_mat * g.d1.transpose();

  // Interior residual, assembled term by term.
  Eigen::ArrayXXd term2 = u_s.array();
  term2.colwise() *= slope_fac;
  term2.rowwise() *= s_row;

  Eigen::ArrayXXd term3 = phi_ss.array();
  term3.rowwise() += lam.curvature.array();
  term3.colwise() /= depth_sq;

  Eigen::ArrayXXd term4 = w.phi.array();
  term4.rowwise() += lam.value.array();

  ResidualPair out;
  out.interior =
      (p.xi * u_q.array() - p.xi * term2 + term3 - p.alpha * term4).matrix();

  // Surface residual at s = 1.
  const Eigen::ArrayXd u1 = u.col(last);
  const Eigen::ArrayXd w1 = big_w.col(last);
  const double q_const = laminar_constants(p).Q;
  const Eigen::ArrayXd f1 =
      0.5 * (p.xi * u1 * u1 + w1 * w1 / depth_sq) + eta - q_const;
  out.surface_hat = g.cos_ana * f1.matrix();
  return out;
}

ResidualPair eval_DwF(const WaveField& field0, const WaveField& dir,
                      const Params& p, const Grid& g) {
  check_grid(field0, g, "eval_DwF");
  check_grid(dir, g, "eval_DwF");

  if (field0.is_zero()) {
    const LaminarTable lam = tabulate_laminar(p, g);
    const int last = g.n_s;
    const Eigen::ArrayXd eta = g.eta_values(dir.eta_hat).array();
    const Eigen::ArrayXd eta_qq = g.eta_qq_values(dir.eta_hat).array();

    const Eigen::MatrixXd phi_s = dir.phi * g.d1.transpose();
    const Eigen::MatrixXd phi_ss = dir.phi * g.d2.transpose();
    const Eigen::MatrixXd phi_qq = g.dqq_even(dir.phi);

    const Eigen::Array<double, 1, Eigen::Dynamic> coupling_row =
        p.xi * g.s_nodes.transpose().array() * lam.slope.array();
    Eigen::ArrayXXd coupling = eta_qq.replicate(1, g.n_s + 1);
    coupling.rowwise() *= coupling_row;

    const Eigen::Array<double, 1, Eigen::Dynamic> restoring_row =
        2.0 * lam.curvature.array();
    Eigen::ArrayXXd restoring = eta.replicate(1, g.n_s + 1);
    restoring.rowwise() *= restoring_row;

    ResidualPair out;
    out.interior = (p.xi * phi_qq.array() + phi_ss.array() -
                    p.alpha * dir.phi.array() - coupling - restoring)
                       .matrix();
    const Eigen::ArrayXd df1 = lam.slope1 * phi_s.col(last).array() +
                               (1.0 - lam.slope1 * lam.slope1) * eta;
    out.surface_hat = g.cos_ana * df1.matrix();
    return out;
  }

  const double dn = dir.sup_norm();
  if (dn == 0.0) {
    ResidualPair out;
    out.surface_hat = Eigen::VectorXd::Zero(g.n_modes);
    out.interior = Eigen::MatrixXd::Zero(g.n_q, g.n_s + 1);
    return out;
  }
  const double h = 1e-7 * std::max(1.0, field0.sup_norm()) / dn;
  WaveField plus = field0, minus = field0;
  WaveField step = dir;
  step *= h;
  plus += step;
  minus -= step;
  const ResidualPair fp = eval_F(plus, p, g);
  const ResidualPair fm = eval_F(minus, p, g);
  ResidualPair out;
  out.surface_hat = (fp.surface_hat - fm.surface_hat) / (2.0 * h);
  out.interior = (fp.interior - fm.interior) / (2.0 * h);
  return out;
}

WaveField apply_T(const Eigen::MatrixXd& phi, const Params& p, const Grid& g) {
  if (phi.rows() != g.n_q || phi.cols() != g.n_s + 1)
    throw GridMismatch("apply_T: phi shape does not match the grid");
  const LaminarTable lam = tabulate_laminar(p, g);
  const Eigen::VectorXd trace = phi.col(g.n_s);

  WaveField out;
  out.eta_hat = g.cos_ana * (-trace / lam.slope1);
  const Eigen::ArrayXd scaled_trace = trace.array() / lam.slope1;
  Eigen::ArrayXXd lift = scaled_trace.replicate(1, g.n_s + 1);
  lift.rowwise() *= g.s_nodes.transpose().array() * lam.slope.array();
  out.phi = phi - lift.matrix();
  return out;
}

WaveField apply_R(const Eigen::VectorXd& eta_hat, const Eigen::MatrixXd& phi,
                  const Params& p, const Grid& g) {
  WaveField out = apply_T(phi, p, g);
  if (eta_hat.size() != g.n_modes)
    throw GridMismatch("apply_R: eta_hat size does not match the grid");
  out.eta_hat = eta_hat;
  return out;
}

Eigen::MatrixXd invert_T(const WaveField& w, const Params& p, const Grid& g) {
  check_grid(w, g, "invert_T");
  const LaminarTable lam = tabulate_laminar(p, g);
  const Eigen::ArrayXd eta = g.eta_values(w.eta_hat).array();
  Eigen::ArrayXXd lift = eta.replicate(1, g.n_s + 1);
  lift.rowwise() *= g.s_nodes.transpose().array() * lam.slope.array();
  return w.phi - lift.matrix();
}

ResidualPair apply_L(const Eigen::MatrixXd& phi, const Params& p,
                     const Grid& g) {
  if (phi.rows() != g.n_q || phi.cols() != g.n_s + 1)
    throw GridMismatch("apply_L: phi shape does not match the grid");
  const LaminarTable lam = tabulate_laminar(p, g);
  const int last = g.n_s;

  ResidualPair out;
  out.interior = p.xi * g.dqq_even(phi) + phi * g.d2.transpose() -
                 p.alpha * phi;
  const Eigen::VectorXd phi_s1 = (phi * g.d1.transpose()).col(last);
  const Eigen::VectorXd comp1 =
      lam.slope1 * phi_s1 -
      (lam.curvature(last) + 1.0 / lam.slope1) * phi.col(last);
  out.surface_hat = g.cos_ana * comp1;
  return out;
}

double inner_product_Y(const WaveField& w1, const WaveField& w2,
                       const Grid& g) {
  check_grid(w1, g, "inner_product_Y");
  check_grid(w2, g, "inner_product_Y");
  const Eigen::MatrixXd p1 = g.cos_ana * w1.phi;
  const Eigen::MatrixXd p2 = g.cos_ana * w2.phi;
  double total = 0.0;
  for (int k = 0; k < g.n_modes; ++k) {
    const double mw = modal_weight(k);
    double s_part = 0.0;
    for (int i = 0; i <= g.n_s; ++i)
      s_part += g.s_weights(i) * p1(k, i) * p2(k, i);
    total += mw * (s_part + w1.eta_hat(k) * w2.eta_hat(k));
  }
  return total;
}

KernelFunction make_kernel_function(const Params& p, int k, const Grid& g,
                                    double scale) {
  KernelFunction kf;
  kf.k = k;
  kf.theta = theta(p, k);
  kf.scale = scale;
  kf.s_profile.resize(g.n_s + 1);
  const double th = kf.theta.theta;
  for (int i = 0; i <= g.n_s; ++i) {
    const double s = g.s_nodes(i);
    double v;
    switch (kf.theta.regime) {
      case Regime::Trigonometric: v = std::sin(th * s) / th; break;
      case Regime::Hyperbolic: v = std::sinh(th * s) / th; break;
      default: v = s; break;
    }
    kf.s_profile(i) = v / scale;
  }
  const double slope1 = psi0_s(p, 1.0);
  kf.eta_coeff = -kf.s_profile(g.n_s) / slope1;
  kf.values = Eigen::MatrixXd::Zero(g.n_q, g.n_s + 1);
  for (int j = 0; j < g.n_q; ++j)
    for (int i = 0; i <= g.n_s; ++i)
      kf.values(j, i) = g.cos_syn(j, k) * kf.s_profile(i);
  return kf;
}

WaveField kernel_field(const KernelFunction& kf, const Grid& g) {
  WaveField w = zero_field(g);
  w.eta_hat(kf.k) = kf.eta_coeff;
  w.phi = kf.values;
  return w;
}

ModeProjection project_Z(const WaveField& w,
                         const std::vector<KernelFunction>& kernels,
                         const Grid& g) {
  check_grid(w, g, "project_Z");
  ModeProjection out;
  out.remainder = w;
  out.amplitudes.reserve(kernels.size());
  for (const KernelFunction& kf : kernels) {
    const WaveField basis = kernel_field(kf, g);
    const double c =
        inner_product_Y(w, basis, g) / inner_product_Y(basis, basis, g);
    out.amplitudes.push_back(c);
    WaveField scaled = basis;
    scaled *= c;
    out.remainder -= scaled;
  }
  return out;
}

}  // namespace trimodal
