#include "trimodal/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "trimodal/errors.hpp"
#include "trimodal/laminar.hpp"
#include "trimodal/modal.hpp"

namespace trimodal {

namespace {

constexpr double kPi = std::numbers::pi;

// Unknowns are kept in coefficient space: pc(k, i) are the cosine
// coefficients of the lifted stream correction per s-node (boundary columns
// pinned to zero), eta(k) the surface coefficients, plus (mu, alpha, xi).
struct State {
  Eigen::MatrixXd pc;   // n_modes x (n_s+1)
  Eigen::VectorXd eta;  // n_modes
  Params params;
};

WaveField to_field(const State& st, const Grid& g) {
  WaveField w;
  w.eta_hat = st.eta;
  w.phi = g.cos_syn * st.pc;
  return w;
}

// Flattened layout: per mode k a block of n_s entries, the interior
// coefficients pc(k, 1..n_s-1) followed by eta(k); then 3 parameter slots.
struct Stack {
  int n_modes, n_s, block, field_size;
  explicit Stack(const Grid& g)
      : n_modes(g.n_modes),
        n_s(g.n_s),
        block(g.n_s),
        field_size(g.n_modes * g.n_s) {}
};

Eigen::VectorXd flatten_field(const Stack& sk, const State& st) {
  Eigen::VectorXd x(sk.field_size);
  for (int k = 0; k < sk.n_modes; ++k) {
    for (int i = 1; i < sk.n_s; ++i)
      x(k * sk.block + i - 1) = st.pc(k, i);
    x(k * sk.block + sk.n_s - 1) = st.eta(k);
  }
  return x;
}

void apply_field_update(const Stack& sk, const Eigen::VectorXd& dx,
                        State& st) {
  for (int k = 0; k < sk.n_modes; ++k) {
    for (int i = 1; i < sk.n_s; ++i)
      st.pc(k, i) += dx(k * sk.block + i - 1);
    st.eta(k) += dx(k * sk.block + sk.n_s - 1);
  }
}

// Pinning rows: ell_j(w) = pi * (sum_i wts_i pc(k_j, i) St_j(i)
//                               + eta(k_j) * eta_tilde_j).
double pin_value(const PinnedKernel& pk, const State& st, const Grid& g) {
  const int k = pk.wtilde.k;
  double s_part = 0.0;
  for (int i = 0; i <= g.n_s; ++i)
    s_part += g.s_weights(i) * st.pc(k, i) * pk.wtilde.s_profile(i);
  return kPi * (s_part + st.eta(k) * pk.wtilde.eta_coeff);
}

// Residual stack: analyzed interior equation at interior nodes, analyzed
// surface equation, then the three pinning defects.
Eigen::VectorXd assemble_residual(const Stack& sk, const State& st,
                                  const std::vector<PinnedKernel>& basis,
                                  const std::array<double, 3>& t,
                                  const Grid& g) {
  const ResidualPair rp = eval_F(to_field(st, g), st.params, g);
  const Eigen::MatrixXd f2_hat = g.cos_ana * rp.interior;
  Eigen::VectorXd r(sk.field_size + 3);
  for (int k = 0; k < sk.n_modes; ++k) {
    for (int i = 1; i < sk.n_s; ++i)
      r(k * sk.block + i - 1) = f2_hat(k, i);
    r(k * sk.block + sk.n_s - 1) = rp.surface_hat(k);
  }
  for (int j = 0; j < 3; ++j)
    r(sk.field_size + j) =
        pin_value(basis[static_cast<size_t>(j)], st, g) -
        t[static_cast<size_t>(j)];
  return r;
}

double residual_norm_of(const Eigen::VectorXd& r) {
  return r.cwiseAbs().maxCoeff();
}

// Laminar linearization blocks. For mode k the unknowns
// [pc(k,1..n_s-1), eta(k)] feed the equations [interior rows 1..n_s-1,
// surface row], with entries
//   interior:  d2(i,j) + (-xi k^2 - alpha) delta_ij,
//              eta column: xi k^2 s_i psi0_s(s_i) - 2 psi0_ss(s_i),
//   surface:   psi0_s(1) d1(n_s, j), eta column 1 - psi0_s(1)^2.
std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> factor_blocks(
    const Stack& sk, const Params& p, const Grid& g) {
  const double slope1 = psi0_s(p, 1.0);
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> lu;
  lu.reserve(static_cast<size_t>(sk.n_modes));
  for (int k = 0; k < sk.n_modes; ++k) {
    const double ksq = static_cast<double>(k) * k;
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(sk.block, sk.block);
    for (int i = 1; i < sk.n_s; ++i) {
      for (int j = 1; j < sk.n_s; ++j) b(i - 1, j - 1) = g.d2(i, j);
      b(i - 1, i - 1) += -p.xi * ksq - p.alpha;
      const double s = g.s_nodes(i);
      b(i - 1, sk.n_s - 1) =
          p.xi * ksq * s * psi0_s(p, s) - 2.0 * psi0_ss(p, s);
    }
    for (int j = 1; j < sk.n_s; ++j)
      b(sk.n_s - 1, j - 1) = slope1 * g.d1(g.n_s, j);
    b(sk.n_s - 1, sk.n_s - 1) = 1.0 - slope1 * slope1;
    lu.emplace_back(b);
  }
  return lu;
}

Eigen::VectorXd block_solve(
    const std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>>& lu,
    const Stack& sk, const Eigen::VectorXd& rhs) {
  Eigen::VectorXd out(sk.field_size);
  for (int k = 0; k < sk.n_modes; ++k)
    out.segment(k * sk.block, sk.block) = lu[static_cast<size_t>(k)].solve(
        rhs.segment(k * sk.block, sk.block));
  return out;
}

// Central differences of the field residual with respect to (mu, alpha, xi);
// the pinning rows are parameter-free.
Eigen::MatrixXd parameter_columns(const Stack& sk, const State& st,
                                  const std::vector<PinnedKernel>& basis,
                                  const std::array<double, 3>& t,
                                  const Grid& g) {
  Eigen::MatrixXd cols(sk.field_size, 3);
  for (int c = 0; c < 3; ++c) {
    State plus = st, minus = st;
    double* fields[3] = {&plus.params.mu, &plus.params.alpha, &plus.params.xi};
    double* fieldsm[3] = {&minus.params.mu, &minus.params.alpha,
                          &minus.params.xi};
    const double base = std::abs(*fields[c]);
    const double h = 1e-7 * std::max(1.0, base);
    *fields[c] += h;
    *fieldsm[c] -= h;
    const Eigen::VectorXd rp = assemble_residual(sk, plus, basis, t, g);
    const Eigen::VectorXd rm = assemble_residual(sk, minus, basis, t, g);
    cols.col(c) =
        (rp.head(sk.field_size) - rm.head(sk.field_size)) / (2.0 * h);
  }
  return cols;
}

// Dense pinning rows over the flattened field unknowns.
Eigen::MatrixXd pinning_rows(const Stack& sk,
                             const std::vector<PinnedKernel>& basis,
                             const Grid& g) {
  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(3, sk.field_size);
  for (int j = 0; j < 3; ++j) {
    const PinnedKernel& pk = basis[static_cast<size_t>(j)];
    const int k = pk.wtilde.k;
    for (int i = 1; i < sk.n_s; ++i)
      rows(j, k * sk.block + i - 1) =
          kPi * g.s_weights(i) * pk.wtilde.s_profile(i);
    rows(j, k * sk.block + sk.n_s - 1) = kPi * pk.wtilde.eta_coeff;
  }
  return rows;
}

// Finite-difference Jacobian of the complete bordered system (field unknowns
// then parameters), used as the robust fallback.
Eigen::MatrixXd full_fd_jacobian(const Stack& sk, const State& st,
                                 const std::vector<PinnedKernel>& basis,
                                 const std::array<double, 3>& t,
                                 const Grid& g) {
  const int n = sk.field_size + 3;
  Eigen::MatrixXd jac(n, n);
  for (int c = 0; c < n; ++c) {
    State plus = st, minus = st;
    double h;
    if (c < sk.field_size) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(sk.field_size);
      const Eigen::VectorXd x = flatten_field(sk, st);
      h = 1e-7 * std::max(1.0, std::abs(x(c)));
      e(c) = h;
      apply_field_update(sk, e, plus);
      e(c) = -h;
      apply_field_update(sk, e, minus);
    } else {
      double* fp[3] = {&plus.params.mu, &plus.params.alpha, &plus.params.xi};
      double* fm[3] = {&minus.params.mu, &minus.params.alpha,
                       &minus.params.xi};
      const int c3 = c - sk.field_size;
      h = 1e-7 * std::max(1.0, std::abs(*fp[c3]));
      *fp[c3] += h;
      *fm[c3] -= h;
    }
    const Eigen::VectorXd rp = assemble_residual(sk, plus, basis, t, g);
    const Eigen::VectorXd rm = assemble_residual(sk, minus, basis, t, g);
    jac.col(c) = (rp - rm) / (2.0 * h);
  }
  return jac;
}

double safe_residual_norm(const Stack& sk, const State& st,
                          const std::vector<PinnedKernel>& basis,
                          const std::array<double, 3>& t, const Grid& g,
                          Eigen::VectorXd* r_out) {
  try {
    Eigen::VectorXd r = assemble_residual(sk, st, basis, t, g);
    const double e = residual_norm_of(r);
    if (r_out) *r_out = std::move(r);
    return e;
  } catch (const DomainCollapse&) {
    return std::numeric_limits<double>::infinity();
  } catch (const std::invalid_argument&) {
    // Trial parameters left the feasible set (e.g. xi <= 0); the line
    // search treats the step as unusable rather than aborting the solve.
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

std::vector<PinnedKernel> build_pinned_basis(const KernelSpec& spec,
                                             const Grid& g) {
  std::vector<PinnedKernel> basis;
  basis.reserve(3);
  const Params& p = spec.params;
  for (int j = 0; j < 3; ++j) {
    const int k = spec.k[static_cast<size_t>(j)];
    const KernelFunction canonical = make_kernel_function(p, k, g, 1.0);
    const Eigen::VectorXd& s_prof = canonical.s_profile;
    const double eta_c = canonical.eta_coeff;

    double s_sq = 0.0, s_lift = 0.0;
    Eigen::VectorXd lifted(g.n_s + 1);
    for (int i = 0; i <= g.n_s; ++i) {
      const double s = g.s_nodes(i);
      lifted(i) = s_prof(i) + s * psi0_s(p, s) * eta_c;
      s_sq += g.s_weights(i) * s_prof(i) * s_prof(i);
      s_lift += g.s_weights(i) * lifted(i) * s_prof(i);
    }
    const double nu_sq = kPi * (s_sq + eta_c * eta_c);
    const double nu = std::sqrt(nu_sq);
    const double gamma = kPi * (s_lift + eta_c * eta_c) / nu_sq;

    PinnedKernel pk;
    pk.wtilde = make_kernel_function(p, k, g, nu);
    pk.nu = nu;
    pk.gamma = gamma;
    pk.basis_profile = lifted / (nu * gamma);
    pk.basis_eta = eta_c / (nu * gamma);
    basis.push_back(std::move(pk));
  }
  return basis;
}

WaveField basis_field(const PinnedKernel& pk, const Grid& g) {
  WaveField w = zero_field(g);
  w.eta_hat(pk.wtilde.k) = pk.basis_eta;
  for (int j = 0; j < g.n_q; ++j)
    for (int i = 0; i <= g.n_s; ++i)
      w.phi(j, i) = g.cos_syn(j, pk.wtilde.k) * pk.basis_profile(i);
  return w;
}

WaveField linear_prediction(const std::vector<PinnedKernel>& basis,
                            const std::array<double, 3>& t, const Grid& g) {
  WaveField w = zero_field(g);
  for (size_t j = 0; j < basis.size() && j < 3; ++j) {
    WaveField b = basis_field(basis[j], g);
    b *= t[j];
    w += b;
  }
  return w;
}

namespace {

BranchPoint solve_with_init(const KernelSpec& spec,
                            const std::array<double, 3>& t, const Grid& g,
                            const SolveOptions& opts,
                            const std::vector<PinnedKernel>& basis,
                            State st) {
  const Stack sk(g);
  Eigen::VectorXd r;
  double err = safe_residual_norm(sk, st, basis, t, g, &r);
  if (std::isinf(err))
    throw NewtonDivergence("solve_branch_point: initial guess collapses the "
                           "fluid domain");

  bool full_mode = opts.use_full_jacobian;
  int iters = 0;
  while (err >= opts.tol) {
    if (iters >= opts.max_iters)
      throw NewtonDivergence("solve_branch_point: no convergence after " +
                             std::to_string(opts.max_iters) + " iterations");
    ++iters;

    Eigen::VectorXd dx(sk.field_size);
    Eigen::Vector3d dp;
    if (!full_mode) {
      const auto lu = factor_blocks(sk, st.params, g);
      const Eigen::MatrixXd pcols = parameter_columns(sk, st, basis, t, g);
      const Eigen::MatrixXd lrows = pinning_rows(sk, basis, g);

      const Eigen::VectorXd y0 = block_solve(lu, sk, r.head(sk.field_size));
      Eigen::MatrixXd y(sk.field_size, 3);
      for (int c = 0; c < 3; ++c)
        y.col(c) = block_solve(lu, sk, pcols.col(c));
      const Eigen::Matrix3d schur = lrows * y;
      const Eigen::Vector3d rhs = r.tail(3) - lrows * y0;
      dp = schur.partialPivLu().solve(rhs);
      dx = -(y0 + y * dp);
    } else {
      const Eigen::MatrixXd jac = full_fd_jacobian(sk, st, basis, t, g);
      const Eigen::VectorXd d = jac.partialPivLu().solve(-r);
      dx = d.head(sk.field_size);
      dp = d.tail(3);
    }

    // Backtracking on the sup norm of the residual stack.
    double step = 1.0;
    bool improved = false;
    State trial = st;
    for (int bt = 0; bt < 9; ++bt) {
      trial = st;
      apply_field_update(sk, step * dx, trial);
      trial.params.mu += step * dp(0);
      trial.params.alpha += step * dp(1);
      trial.params.xi += step * dp(2);
      Eigen::VectorXd r_trial;
      const double err_trial =
          safe_residual_norm(sk, trial, basis, t, g, &r_trial);
      if (err_trial < err * (1.0 - 1e-4) || err_trial < opts.tol) {
        st = trial;
        err = err_trial;
        r = std::move(r_trial);
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) {
      if (!full_mode) {
        full_mode = true;  // structured step stalled; retry with the FD
        --iters;           // Jacobian of the full bordered system
        continue;
      }
      throw NewtonDivergence(
          "solve_branch_point: line search stalled at residual " +
          std::to_string(err));
    }
  }

  BranchPoint bp;
  bp.t = t;
  bp.field = to_field(st, g);
  bp.params = st.params;
  bp.residual_norm = err;
  bp.newton_iters = iters;
  bp.admissible = amplitude_admissible(spec, t, opts.delta);
  return bp;
}

State initial_state(const std::vector<PinnedKernel>& basis,
                    const std::array<double, 3>& t, const KernelSpec& spec,
                    const Grid& g) {
  State st;
  st.pc = Eigen::MatrixXd::Zero(g.n_modes, g.n_s + 1);
  st.eta = Eigen::VectorXd::Zero(g.n_modes);
  st.params = spec.params;
  for (int j = 0; j < 3; ++j) {
    const PinnedKernel& pk = basis[static_cast<size_t>(j)];
    st.pc.row(pk.wtilde.k) +=
        t[static_cast<size_t>(j)] * pk.basis_profile.transpose();
    st.eta(pk.wtilde.k) += t[static_cast<size_t>(j)] * pk.basis_eta;
  }
  return st;
}

void check_solve_inputs(const KernelSpec& spec, const Grid& g) {
  if (g.n_modes < 4 * spec.k[2])
    throw std::invalid_argument(
        "solve: grid must carry at least 4*k3 cosine modes for this spec");
}

}  // namespace

BranchPoint solve_branch_point(const KernelSpec& spec,
                               const std::array<double, 3>& t, const Grid& g,
                               const SolveOptions& opts) {
  check_solve_inputs(spec, g);
  const auto basis = build_pinned_basis(spec, g);
  return solve_with_init(spec, t, g, opts, basis,
                         initial_state(basis, t, spec, g));
}

ContinuationResult continue_in_amplitude(const KernelSpec& spec,
                                         const std::array<double, 3>& direction,
                                         double h_max, int n_steps,
                                         const Grid& g,
                                         const SolveOptions& opts) {
  if (n_steps < 1)
    throw std::invalid_argument("continue_in_amplitude: n_steps must be >= 1");
  check_solve_inputs(spec, g);
  const auto basis = build_pinned_basis(spec, g);

  ContinuationResult result;
  std::optional<State> warm;
  for (int j = 1; j <= n_steps; ++j) {
    const double h = h_max * static_cast<double>(j) / n_steps;
    const std::array<double, 3> t = {direction[0] * h, direction[1] * h,
                                     direction[2] * h};
    State st = warm ? *warm : initial_state(basis, t, spec, g);
    try {
      BranchPoint bp = solve_with_init(spec, t, g, opts, basis, st);
      State next;
      next.pc = g.cos_ana * bp.field.phi;
      next.eta = bp.field.eta_hat;
      next.params = bp.params;
      warm = std::move(next);
      result.points.push_back(std::move(bp));
    } catch (const NewtonDivergence& e) {
      result.truncated = true;
      result.message = e.what();
      break;
    }
  }
  return result;
}

std::vector<std::pair<double, double>> surface_profile(const BranchPoint& bp,
                                                       int n_samples) {
  if (n_samples < 2)
    throw std::invalid_argument("surface_profile: need at least 2 samples");
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<size_t>(n_samples));
  const int m = static_cast<int>(bp.field.eta_hat.size());
  for (int i = 0; i < n_samples; ++i) {
    const double q = -kPi + 2.0 * kPi * i / (n_samples - 1);
    double h = 0.0;
    for (int k = 0; k < m; ++k) h += bp.field.eta_hat(k) * std::cos(k * q);
    out.emplace_back(q, h);
  }
  return out;
}

bool amplitude_admissible(const KernelSpec& spec,
                          const std::array<double, 3>& t, double delta) {
  const ModalClass mc = classify(spec.k);
  std::array<double, 3> reduced_t{};
  for (int i = 0; i < 3; ++i)
    reduced_t[static_cast<size_t>(i)] =
        t[static_cast<size_t>(mc.perm[static_cast<size_t>(i)])];
  return region_contains(RegionPredicate{mc.tag, delta}, reduced_t);
}

}  // namespace trimodal
