#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "trimodal/field.hpp"
#include "trimodal/grid.hpp"
#include "trimodal/kernel.hpp"
#include "trimodal/operators.hpp"

namespace trimodal {

struct SolveOptions {
  double tol = 1e-10;  // sup norm of the projected residual stack
  int max_iters = 50;
  double delta = 0.05;  // admissibility aperture for the region check
  // Assemble the finite-difference Jacobian of the full bordered system at
  // every iteration instead of the structured laminar-linearization blocks.
  // The structured path falls back to this automatically when it stalls.
  bool use_full_jacobian = false;
};

// One kernel direction prepared for amplitude pinning:
//   wtilde  unit-Y-norm kernel function (scale = nu),
//   basis   profile/eta pair of the lifted direction, rescaled so that its
//           pinned amplitude <basis, wtilde> is exactly 1.
// gamma records the linear-tangency correction <lift(S)/nu, S/nu> that makes
// the solution's deviation from the linear prediction quadratic in t.
struct PinnedKernel {
  KernelFunction wtilde;
  Eigen::VectorXd basis_profile;  // n_s + 1 values on the s-nodes
  double basis_eta = 0.0;         // cosine coefficient at mode k
  double nu = 1.0;
  double gamma = 1.0;
};

std::vector<PinnedKernel> build_pinned_basis(const KernelSpec& spec,
                                             const Grid& g);

WaveField basis_field(const PinnedKernel& pk, const Grid& g);

// sum_j t_j * basis_j, the linear approximation of the branch at amplitude t.
WaveField linear_prediction(const std::vector<PinnedKernel>& basis,
                            const std::array<double, 3>& t, const Grid& g);

struct BranchPoint {
  std::array<double, 3> t{};
  WaveField field;
  Params params;
  double residual_norm = 0.0;
  int newton_iters = 0;
  bool admissible = true;
};

// Small-amplitude wave with pinned kernel amplitudes t: solves the water-wave
// residual together with <w, wtilde_j> = t_j for the field and (mu, alpha,
// xi), lambda frozen. Throws NewtonDivergence when the corrector fails and
// GridMismatch/invalid_argument on inconsistent grid or spec.
BranchPoint solve_branch_point(const KernelSpec& spec,
                               const std::array<double, 3>& t, const Grid& g,
                               const SolveOptions& opts = {});

struct ContinuationResult {
  std::vector<BranchPoint> points;
  bool truncated = false;  // corrector diverged before the last step
  std::string message;
};

// Warm-started march t = direction * h_max * j/n_steps, j = 1..n_steps.
// Divergence at any step truncates the result instead of throwing.
ContinuationResult continue_in_amplitude(const KernelSpec& spec,
                                         const std::array<double, 3>& direction,
                                         double h_max, int n_steps,
                                         const Grid& g,
                                         const SolveOptions& opts = {});

// Surface elevation eta(q) sampled at n_samples equispaced points covering
// [-pi, pi] inclusive (symmetric about q = 0).
std::vector<std::pair<double, double>> surface_profile(const BranchPoint& bp,
                                                       int n_samples);

// Region membership of the amplitude triple for the spec's mode triple,
// evaluated in the classification's reduced ordering.
bool amplitude_admissible(const KernelSpec& spec,
                          const std::array<double, 3>& t, double delta);

}  // namespace trimodal
