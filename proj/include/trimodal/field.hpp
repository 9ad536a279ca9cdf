#pragma once

#include <Eigen/Dense>

#include "trimodal/errors.hpp"
#include "trimodal/grid.hpp"

namespace trimodal {

// Even periodic perturbation of the laminar state in flattened coordinates:
// eta is the surface displacement held as cosine coefficients, phi the
// stream-function correction as values on the (q, s) collocation grid
// (rows q, columns s). Admissible fields have phi = 0 on both horizontal
// boundaries s = 0 and s = 1.
struct WaveField {
  Eigen::VectorXd eta_hat;  // n_modes cosine coefficients
  Eigen::MatrixXd phi;      // n_q x (n_s + 1) values

  WaveField& operator+=(const WaveField& o) {
    eta_hat += o.eta_hat;
    phi += o.phi;
    return *this;
  }
  WaveField& operator-=(const WaveField& o) {
    eta_hat -= o.eta_hat;
    phi -= o.phi;
    return *this;
  }
  WaveField& operator*=(double c) {
    eta_hat *= c;
    phi *= c;
    return *this;
  }
  bool is_zero() const { return eta_hat.isZero(0.0) && phi.isZero(0.0); }
  double sup_norm() const {
    double e = eta_hat.size() ? eta_hat.cwiseAbs().maxCoeff() : 0.0;
    double p = phi.size() ? phi.cwiseAbs().maxCoeff() : 0.0;
    return e > p ? e : p;
  }
};

inline WaveField zero_field(const Grid& g) {
  WaveField w;
  w.eta_hat = Eigen::VectorXd::Zero(g.n_modes);
  w.phi = Eigen::MatrixXd::Zero(g.n_q, g.n_s + 1);
  return w;
}

inline void check_grid(const WaveField& w, const Grid& g, const char* where) {
  if (w.eta_hat.size() != g.n_modes || w.phi.rows() != g.n_q ||
      w.phi.cols() != g.n_s + 1)
    throw GridMismatch(std::string(where) +
                       ": field shape does not match the grid");
}

// Residual of the water-wave map, shaped like a field: the dynamic surface
// condition as cosine coefficients, the interior vorticity equation as grid
// values.
struct ResidualPair {
  Eigen::VectorXd surface_hat;  // n_modes
  Eigen::MatrixXd interior;     // n_q x (n_s + 1)
};

}  // namespace trimodal
