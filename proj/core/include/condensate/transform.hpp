#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include "condensate/potentials.hpp"
#include "condensate/radial.hpp"

namespace condensate {

using RadialFunction = std::vector<std::complex<double>>;

// Zero values mean "choose automatically" (see build_transform).
struct TransformSpec {
  double k_max = 0.0;
  std::size_t n_k = 256;
  double r_max = 0.0;
  double h = 0.0;
  double completeness_tol = 1e-6;
};

// s-wave eigenfunction expansion of h = -d^2/dr^2 + V/2 acting on u = r psi.
// States are normalized so u_k(r) -> sin(k r + delta(k)); the forward map is
// g -> sqrt(2/pi) int u_k g dr, and the free sine basis is kept alongside.
class ScatteringTransform {
 public:
  ScatteringTransform(const Potential& p, const TransformSpec& spec);

  const RadialGrid& grid() const noexcept { return grid_; }
  const std::vector<double>& k() const noexcept { return k_; }
  const std::vector<double>& k_weights() const noexcept { return kw_; }
  const std::vector<double>& phase() const noexcept { return delta_; }
  const Potential& potential() const noexcept { return potential_; }
  const TransformSpec& spec() const noexcept { return spec_; }

  RadialFunction forward(std::span<const std::complex<double>> g, bool free = false) const;
  RadialFunction inverse(std::span<const std::complex<double>> c, bool free = false) const;

  // Relative L2 round-trip error on a probe Gaussian of width 8 / k_max,
  // worst of the interacting and free bases.
  double completeness_defect() const noexcept { return defect_; }
  bool resonance_suspected() const noexcept { return resonance_; }

 private:
  Potential potential_;
  TransformSpec spec_;
  RadialGrid grid_;
  std::vector<double> k_, kw_, delta_;
  Eigen::MatrixXd states_;  // rows: radial nodes, columns: k nodes
  Eigen::MatrixXd sines_;
  double defect_ = 0.0;
  bool resonance_ = false;
};

// Builds the transform, filling unset fields: k_max = 8, r_max = max(20 range, 320 / k_max),
// h = min(range / 100, 0.1 / k_max). Throws "insufficient k resolution" when the
// completeness defect exceeds spec.completeness_tol.
ScatteringTransform build_transform(const Potential& p, const TransformSpec& spec = {});

// W g: free sine coefficients, times exp(-i delta), resynthesized in the
// interacting basis. The adjoint runs the same chain backwards.
RadialFunction apply_wave_operator(const ScatteringTransform& t, std::span<const std::complex<double>> g,
                                   bool adjoint = false);

// (D_N u)(r) = N^{1/2} u(N r): the 3D dilation psi -> N^{3/2} psi(N x) acting on u = r psi.
RadialFunction dilate(const RadialGrid& grid, std::span<const std::complex<double>> u, double n,
                      const RadialGrid& target);

// u(r) = r exp(-r^2 / 2 s^2), normalized in the 3D sense, on the given grid.
RadialFunction radial_gaussian(const RadialGrid& grid, double width);

// L2 distance (3D norm) between two radial functions on the same grid.
double l2_distance(const RadialGrid& grid, std::span<const std::complex<double>> a,
                   std::span<const std::complex<double>> b);

}  // namespace condensate
