#pragma once

#include <Eigen/Dense>

namespace trimodal {

// Mixed discretization of the unit strip (q, s) in [-pi, pi) x [0, 1]:
// cosine/sine collocation in the horizontal with n_q = 3*n_modes equispaced
// points (exact de-aliasing of quadratic products of n_modes cosine modes),
// and a uniform vertical grid of n_s intervals with 11-point finite
// difference rows for d/ds and d^2/ds^2.
//
// Horizontal derivatives are computed analysis -> mode scaling -> synthesis,
// typed by parity: even (cosine) data differentiates to odd (sine) data and
// vice versa. Trig tables are mirrored across q = 0 so evenness is exact in
// floating point.
struct Grid {
  int n_modes = 0;  // cosine modes k = 0..n_modes-1
  int n_s = 0;      // vertical intervals; n_s + 1 nodes
  int n_q = 0;      // collocation points, 3*n_modes

  Eigen::VectorXd q_nodes;    // n_q, 2*pi*j/n_q
  Eigen::VectorXd s_nodes;    // n_s+1, i/n_s
  Eigen::VectorXd s_weights;  // trapezoid quadrature weights on s_nodes

  Eigen::MatrixXd cos_syn;  // n_q x n_modes, cos(k q_j)
  Eigen::MatrixXd sin_syn;  // n_q x n_modes, sin(k q_j)
  Eigen::MatrixXd cos_ana;  // n_modes x n_q, (w_k/n_q) cos(k q_j), w_0=1,w_k=2
  Eigen::MatrixXd sin_ana;  // n_modes x n_q, (2/n_q) sin(k q_j), row 0 zero

  Eigen::MatrixXd d1;  // (n_s+1)^2 first-derivative rows, order 10
  Eigen::MatrixXd d2;  // (n_s+1)^2 second-derivative rows, order >= 8

  // d/dq of nodal data, rows indexed by q. Even input produces odd output
  // and conversely; both re-project onto the retained band.
  Eigen::MatrixXd dq_even(const Eigen::MatrixXd& values) const;
  Eigen::MatrixXd dq_odd(const Eigen::MatrixXd& values) const;
  // d^2/dq^2 of even data (stays even).
  Eigen::MatrixXd dqq_even(const Eigen::MatrixXd& values) const;

  // Surface synthesis from cosine coefficients.
  Eigen::VectorXd eta_values(const Eigen::VectorXd& eta_hat) const;
  Eigen::VectorXd eta_q_values(const Eigen::VectorXd& eta_hat) const;
  Eigen::VectorXd eta_qq_values(const Eigen::VectorXd& eta_hat) const;
};

// Requires n_modes >= 4 and n_s >= 16 (11-point vertical stencils).
Grid build_grid(int n_modes, int n_s);

// Finite difference weights for the m-th derivative at z from nodes x
// (Fornberg's recursion). Returned vector is indexed like x.
Eigen::VectorXd fd_weights(double z, const Eigen::VectorXd& x, int m);

}  // namespace trimodal
