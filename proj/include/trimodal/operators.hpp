#pragma once

#include <vector>

#include "trimodal/field.hpp"
#include "trimodal/grid.hpp"
#include "trimodal/params.hpp"

namespace trimodal {

// Full water-wave residual at laminar parameters p perturbed by w:
//   surface: (xi u^2 + W^2/(1+eta)^2)/2 + eta - Q   at s = 1,
//   interior: xi u_q - xi s eta_q/(1+eta) u_s
//             + (psi0_ss + phi_ss)/(1+eta)^2 - alpha (psi0 + phi),
// where W = psi0_s + phi_s and u = phi_q - s eta_q W/(1+eta) is the
// flattened horizontal velocity. Vanishes identically at w = 0.
// Throws DomainCollapse when min(1 + eta) <= 0.
ResidualPair eval_F(const WaveField& w, const Params& p, const Grid& g);

// Directional derivative of eval_F at field0 in direction dir. At field0 = 0
// the closed-form linearization is used:
//   surface:  psi0_s(1) phi_s - psi0_s(1)^2 eta + eta   at s = 1,
//   interior: xi phi_qq + phi_ss - alpha phi
//             - xi s psi0_s eta_qq - 2 psi0_ss eta;
// elsewhere a central difference of eval_F with step 1e-7 * scale.
ResidualPair eval_DwF(const WaveField& field0, const WaveField& dir,
                      const Params& p, const Grid& g);

// Isomorphism between raw interior functions and admissible fields: absorbs
// the surface trace of phi into a surface displacement,
//   T(phi) = (-phi|_{s=1}/psi0_s(1),  phi - s psi0_s(s) phi|_{s=1}/psi0_s(1)).
// The second component vanishes on both boundaries.
WaveField apply_T(const Eigen::MatrixXd& phi, const Params& p, const Grid& g);

// Companion map keeping a prescribed surface component: same lifted phi as
// apply_T but with eta given. apply_R(apply_T(phi).eta, phi) == apply_T(phi).
WaveField apply_R(const Eigen::VectorXd& eta_hat, const Eigen::MatrixXd& phi,
                  const Params& p, const Grid& g);

// Inverse of the lift: recovers the raw interior function from a field,
//   phi = phi_hat - s psi0_s(s) eta.
Eigen::MatrixXd invert_T(const WaveField& w, const Params& p, const Grid& g);

// Linearized operator pair on raw interior functions:
//   surface:  psi0_s(1) phi_s - (psi0_ss(1) + 1/psi0_s(1)) phi   at s = 1,
//   interior: xi phi_qq + phi_ss - alpha phi.
// Kernel functions of certified parameters annihilate both components.
ResidualPair apply_L(const Eigen::MatrixXd& phi, const Params& p,
                     const Grid& g);

// Weighted L2 pairing diagonal in the cosine band:
//   <w1, w2> = sum_i wts_i sum_k mw_k P1(k,i) P2(k,i) + sum_k mw_k a_k b_k,
// mw_0 = 2pi, mw_k = pi. Parseval-exact in q on the collocation grid.
double inner_product_Y(const WaveField& w1, const WaveField& w2,
                       const Grid& g);

// One kernel direction cos(k q) * sin*(theta_k s)/theta_k (s when theta = 0)
// together with its surface pairing; profile and surface coefficient are
// divided by `scale`.
struct KernelFunction {
  int k = 0;
  ThetaValue theta;
  double scale = 1.0;
  Eigen::VectorXd s_profile;  // (n_s+1)
  double eta_coeff = 0.0;     // cosine coefficient of the eta component
  Eigen::MatrixXd values;     // n_q x (n_s+1), cos(k q) x s_profile
};

KernelFunction make_kernel_function(const Params& p, int k, const Grid& g,
                                    double scale = 1.0);

// The kernel function as an admissible field (eta part plus lifted profile
// is NOT applied here: wtilde pairs the raw profile with its eta component).
WaveField kernel_field(const KernelFunction& kf, const Grid& g);

struct ModeProjection {
  std::vector<double> amplitudes;
  WaveField remainder;
};

// Y-orthogonal projection onto span{kernel fields}: amplitudes
// c_j = <w, wtilde_j>/<wtilde_j, wtilde_j>, remainder w - sum c_j wtilde_j.
ModeProjection project_Z(const WaveField& w,
                         const std::vector<KernelFunction>& kernels,
                         const Grid& g);

}  // namespace trimodal
