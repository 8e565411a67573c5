#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "condensate/gp.hpp"

namespace condensate {

// One-particle kernel gamma(x; x') on the grid of a Field: rows are x,
// columns x'. Operators act with the cell volume as quadrature weight.
class MarginalKernel {
 public:
  MarginalKernel(const Field& layout, Eigen::MatrixXcd kernel, std::optional<std::vector<cplx>> witness = {});

  const Eigen::MatrixXcd& kernel() const noexcept { return kernel_; }
  const std::optional<std::vector<cplx>>& witness() const noexcept { return witness_; }
  const Field& layout() const noexcept { return layout_; }

  double trace() const;
  double hs_norm() const;  // cell_volume * Frobenius norm
  double hermiticity_defect() const;  // max |K(x;x') - conj K(x';x)|
  double min_eigenvalue() const;      // of the operator; dense, small grids only

 private:
  Field layout_;  // shape and box only
  Eigen::MatrixXcd kernel_;
  std::optional<std::vector<cplx>> witness_;
};

// |phi><phi|. Throws "unnormalized" unless ||phi|| = 1 within 1e-8.
MarginalKernel factorized_marginal(const Field& phi);

// Tr_2 [delta(x1 - x2), |phi><phi|^{(x)2}] = (|phi(x)|^2 - |phi(x')|^2) phi(x) conj phi(x').
// Needs a rank-1 witness; anything else throws "rank-1 required".
Eigen::MatrixXcd delta_trace_term(const MarginalKernel& gamma);
Eigen::MatrixXcd delta_trace_term(const Field& phi);

// Snapshots phi at t0 + n dt, all on one layout.
struct Trajectory {
  std::vector<Field> frames;
  double dt = 0.0;
};

// Strang-evolves init and records every `stride` steps up to t_end.
Trajectory gp_trajectory(Field init, const GPConfig& config, double t_end, std::size_t stride = 1);

struct HierarchyResidual {
  std::vector<double> times;                   // interior sample times
  std::vector<double> differential_residual;   // HS norm of the residual kernel per time
  double max_differential = 0.0;
  double integral_residual = 0.0;              // at the final time, when requested
  double quadrature_error = 0.0;               // Richardson estimate for the s-integral
};

// i d/dt gamma - [-Delta, gamma] - g Tr_2[delta, gamma^(2)] with central
// differences in time and spectral derivatives in space.
HierarchyResidual hierarchy_residual(const Trajectory& traj, double coupling);

// gamma_t - U(t) gamma_0 + i g int_0^t U(t - s) Tr_2[delta, gamma_s^(2)] ds,
// trapezoid in s over the trajectory samples up to frame `last` (default: all).
// Throws "refine trajectory sampling" when the Richardson estimate of the
// quadrature error exceeds 1e-2 of ||gamma_t||.
HierarchyResidual integral_form_residual(const Trajectory& traj, double coupling, std::size_t last = 0);

}  // namespace condensate
