#include "condensate/radial.hpp"

#include <algorithm>
#include <cmath>

#include "condensate/error.hpp"

namespace condensate {

namespace {

std::size_t even_intervals(double length, double h_target) {
  auto m = static_cast<std::size_t>(std::ceil(length / h_target - 1e-9));
  m = std::max<std::size_t>(m, 2);
  return m + (m % 2);
}

void append_piece(std::vector<double>& r, std::vector<double>& w, double a, double b, std::size_t m) {
  const double h = (b - a) / static_cast<double>(m);
  const std::size_t start = r.size() - 1;  // node a is already present
  for (std::size_t j = 1; j <= m; ++j) r.push_back(j == m ? b : a + static_cast<double>(j) * h);
  w.resize(r.size(), 0.0);
  for (std::size_t j = 0; j <= m; ++j) {
    const double c = (j == 0 || j == m) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    w[start + j] += c * h / 3.0;
  }
}

}  // namespace

RadialGrid RadialGrid::build(double r_max, double h_target, std::span<const double> breakpoints) {
  if (!(r_max > 0.0) || !(h_target > 0.0) || !std::isfinite(r_max)) {
    fail(ErrorKind::invalid_argument, "radial grid needs r_max > 0 and spacing > 0");
  }
  std::vector<double> cuts;
  for (double b : breakpoints) {
    if (b > 0.0 && b < r_max) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  RadialGrid g;
  g.r_.push_back(0.0);
  g.w_.push_back(0.0);
  if (cuts.size() == 1) {
    // Uniform spacing that puts the single breakpoint on an even node.
    const double b = cuts.front();
    const std::size_t m = even_intervals(b, h_target);
    const double h = b / static_cast<double>(m);
    const std::size_t rest = even_intervals(r_max - b, h);
    append_piece(g.r_, g.w_, 0.0, b, m);
    g.breaks_.push_back(g.r_.size() - 1);
    append_piece(g.r_, g.w_, b, b + h * static_cast<double>(rest), rest);
    g.h_max_ = h;
    g.uniform_ = true;
    return g;
  }
  cuts.push_back(r_max);
  double a = 0.0;
  g.h_max_ = 0.0;
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    const std::size_t m = even_intervals(cuts[c] - a, h_target);
    append_piece(g.r_, g.w_, a, cuts[c], m);
    g.h_max_ = std::max(g.h_max_, (cuts[c] - a) / static_cast<double>(m));
    if (c + 1 < cuts.size()) g.breaks_.push_back(g.r_.size() - 1);
    a = cuts[c];
  }
  g.uniform_ = cuts.size() == 1;
  return g;
}

RadialGrid RadialGrid::scaled(double factor) const {
  RadialGrid g = *this;
  for (auto& x : g.r_) x *= factor;
  for (auto& x : g.w_) x *= factor;
  g.h_max_ *= factor;
  return g;
}

bool RadialGrid::is_break_node(std::size_t i) const {
  return std::find(breaks_.begin(), breaks_.end(), i) != breaks_.end();
}

double RadialGrid::integrate(std::span<const double> f) const {
  if (f.size() != r_.size()) fail(ErrorKind::grid_mismatch, "integrand length differs from grid size");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w_[i] * f[i];
  return s;
}

double RadialGrid::norm(std::span<const std::complex<double>> u) const {
  if (u.size() != r_.size()) fail(ErrorKind::grid_mismatch, "function length differs from grid size");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += w_[i] * std::norm(u[i]);
  return std::sqrt(4.0 * M_PI * s);
}

double RadialGrid::norm(std::span<const double> u) const {
  if (u.size() != r_.size()) fail(ErrorKind::grid_mismatch, "function length differs from grid size");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += w_[i] * u[i] * u[i];
  return std::sqrt(4.0 * M_PI * s);
}

std::vector<double> sample_potential(const Potential& p, const RadialGrid& grid) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = p(grid[i]);
  for (std::size_t i : grid.break_nodes()) v[i] = 0.5 * (p.left_limit(grid[i]) + p.right_limit(grid[i]));
  return v;
}

double potential_inside(const Potential& p, double r, double a, double b) {
  const double eps = 1e-10 * (b - a);
  return p(std::clamp(r, a + eps, b - eps));
}

}  // namespace condensate
