#include "trimodal/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace trimodal {

namespace {

constexpr double kPi = std::numbers::pi;

// Stencil width for both vertical derivative matrices: 11 points gives an
// interior order of 10 for d/ds and d^2/ds^2 (centered) and at least 8 near
// the boundaries, comfortably below the 1e-8 kernel-residual budget at
// n_s = 64 while still converging under refinement.
constexpr int kStencilPoints = 11;

Eigen::MatrixXd build_derivative(const Eigen::VectorXd& nodes, int m) {
  const int n = static_cast<int>(nodes.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  const int w = std::min(kStencilPoints, n);
  for (int i = 0; i < n; ++i) {
    int lo = std::clamp(i - w / 2, 0, n - w);
    Eigen::VectorXd x = nodes.segment(lo, w);
    Eigen::VectorXd wts = fd_weights(nodes(i), x, m);
    for (int j = 0; j < w; ++j) d(i, lo + j) = wts(j);
  }
  return d;
}

}  // namespace

Eigen::VectorXd fd_weights(double z, const Eigen::VectorXd& x, int m) {
  const int n = static_cast<int>(x.size()) - 1;
  if (n < m) throw std::invalid_argument("fd_weights: need more nodes than m");
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n + 1, m + 1);
  double c1 = 1.0;
  double c4 = x(0) - z;
  c(0, 0) = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    double c5 = c4;
    c4 = x(i) - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x(i) - x(j);
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c(i, k) = c1 * (k * c(i - 1, k - 1) - c5 * c(i - 1, k)) / c2;
        c(i, 0) = -c1 * c5 * c(i - 1, 0) / c2;
      }
      for (int k = mn; k >= 1; --k)
        c(j, k) = (c4 * c(j, k) - k * c(j, k - 1)) / c3;
      c(j, 0) = c4 * c(j, 0) / c3;
    }
    c1 = c2;
  }
  return c.col(m);
}

Grid build_grid(int n_modes, int n_s) {
  if (n_modes < 4)
    throw std::invalid_argument("build_grid: n_modes must be at least 4");
  if (n_s < 16)
    throw std::invalid_argument("build_grid: n_s must be at least 16");

  Grid g;
  g.n_modes = n_modes;
  g.n_s = n_s;
  g.n_q = 3 * n_modes;

  g.q_nodes.resize(g.n_q);
  for (int j = 0; j < g.n_q; ++j) g.q_nodes(j) = 2.0 * kPi * j / g.n_q;

  g.s_nodes.resize(n_s + 1);
  for (int i = 0; i <= n_s; ++i)
    g.s_nodes(i) = static_cast<double>(i) / n_s;

  g.s_weights = Eigen::VectorXd::Constant(n_s + 1, 1.0 / n_s);
  g.s_weights(0) *= 0.5;
  g.s_weights(n_s) *= 0.5;

  // Tables on j <= n_q/2, mirrored so that cos(k q_{n_q-j}) == cos(k q_j)
  // and sin(k q_{n_q-j}) == -sin(k q_j) hold bit-exactly.
  g.cos_syn.resize(g.n_q, n_modes);
  g.sin_syn.resize(g.n_q, n_modes);
  for (int j = 0; j <= g.n_q / 2; ++j) {
    for (int k = 0; k < n_modes; ++k) {
      const double arg = 2.0 * kPi * j * k / g.n_q;
      g.cos_syn(j, k) = std::cos(arg);
      g.sin_syn(j, k) = std::sin(arg);
    }
  }
  for (int j = g.n_q / 2 + 1; j < g.n_q; ++j) {
    for (int k = 0; k < n_modes; ++k) {
      g.cos_syn(j, k) = g.cos_syn(g.n_q - j, k);
      g.sin_syn(j, k) = -g.sin_syn(g.n_q - j, k);
    }
  }

  g.cos_ana = g.cos_syn.transpose() * (2.0 / g.n_q);
  g.cos_ana.row(0) *= 0.5;
  g.sin_ana = g.sin_syn.transpose() * (2.0 / g.n_q);
  g.sin_ana.row(0).setZero();

  g.d1 = build_derivative(g.s_nodes, 1);
  g.d2 = build_derivative(g.s_nodes, 2);
  return g;
}

Eigen::MatrixXd Grid::dq_even(const Eigen::MatrixXd& values) const {
  Eigen::MatrixXd hat = cos_ana * values;
  for (int k = 0; k < n_modes; ++k) hat.row(k) *= -static_cast<double>(k);
  return sin_syn * hat;
}

Eigen::MatrixXd Grid::dq_odd(const Eigen::MatrixXd& values) const {
  Eigen::MatrixXd hat = sin_ana * values;
  for (int k = 0; k < n_modes; ++k) hat.row(k) *= static_cast<double>(k);
  return cos_syn * hat;
}

Eigen::MatrixXd Grid::dqq_even(const Eigen::MatrixXd& values) const {
  Eigen::MatrixXd hat = cos_ana * values;
  for (int k = 0; k < n_modes; ++k)
    hat.row(k) *= -static_cast<double>(k) * k;
  return cos_syn * hat;
}

Eigen::VectorXd Grid::eta_values(const Eigen::VectorXd& eta_hat) const {
  return cos_syn * eta_hat;
}

Eigen::VectorXd Grid::eta_q_values(const Eigen::VectorXd& eta_hat) const {
  Eigen::VectorXd scaled = eta_hat;
  for (int k = 0; k < n_modes; ++k) scaled(k) *= -static_cast<double>(k);
  return sin_syn * scaled;
}

Eigen::VectorXd Grid::eta_qq_values(const Eigen::VectorXd& eta_hat) const {
  Eigen::VectorXd scaled = eta_hat;
  for (int k = 0; k < n_modes; ++k)
    scaled(k) *= -static_cast<double>(k) * k;
  return cos_syn * scaled;
}

}  // namespace trimodal
