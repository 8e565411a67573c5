#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "condensate/potentials.hpp"

namespace condensate {

// Nodes on [0, r_max]. Between consecutive breakpoints the spacing is
// uniform with an even number of intervals, so composite Simpson is exact
// for piecewise cubics and a potential jump always lands on a node. With at
// most one breakpoint the whole grid is uniform.
class RadialGrid {
 public:
  RadialGrid() = default;
  static RadialGrid build(double r_max, double h_target, std::span<const double> breakpoints = {});
  // Same layout with every radius multiplied by factor.
  RadialGrid scaled(double factor) const;

  std::size_t size() const noexcept { return r_.size(); }
  double operator[](std::size_t i) const { return r_[i]; }
  const std::vector<double>& nodes() const noexcept { return r_; }
  const std::vector<double>& weights() const noexcept { return w_; }
  const std::vector<std::size_t>& break_nodes() const noexcept { return breaks_; }
  double r_max() const { return r_.back(); }
  double max_spacing() const noexcept { return h_max_; }
  bool uniform() const noexcept { return uniform_; }
  bool is_break_node(std::size_t i) const;

  double integrate(std::span<const double> f) const;
  double norm(std::span<const std::complex<double>> u) const;  // (4 pi int |u|^2 dr)^{1/2}
  double norm(std::span<const double> u) const;

 private:
  std::vector<double> r_;
  std::vector<double> w_;
  std::vector<std::size_t> breaks_;
  double h_max_ = 0.0;
  bool uniform_ = true;
};

// V at the nodes; at a breakpoint node the mean of the one-sided limits is
// used, which makes the piecewise Simpson rule consistent across the jump.
std::vector<double> sample_potential(const Potential& p, const RadialGrid& grid);

// V on the open interval (a, b): endpoints are nudged inward so a jump at a
// node is seen from the correct side.
double potential_inside(const Potential& p, double r, double a, double b);

}  // namespace condensate
