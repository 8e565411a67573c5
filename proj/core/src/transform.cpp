#include "condensate/transform.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "condensate/error.hpp"
#include "condensate/quadrature.hpp"

namespace condensate {

namespace {

const double kSqrt2OverPi = std::sqrt(2.0 / M_PI);

Eigen::VectorXd real_part(std::span<const std::complex<double>> z) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(z.size()));
  for (std::size_t i = 0; i < z.size(); ++i) v[static_cast<Eigen::Index>(i)] = z[i].real();
  return v;
}

Eigen::VectorXd imag_part(std::span<const std::complex<double>> z) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(z.size()));
  for (std::size_t i = 0; i < z.size(); ++i) v[static_cast<Eigen::Index>(i)] = z[i].imag();
  return v;
}

RadialFunction combine(const Eigen::VectorXd& re, const Eigen::VectorXd& im) {
  RadialFunction out(static_cast<std::size_t>(re.size()));
  for (Eigen::Index i = 0; i < re.size(); ++i) out[static_cast<std::size_t>(i)] = {re[i], im[i]};
  return out;
}

}  // namespace

ScatteringTransform::ScatteringTransform(const Potential& p, const TransformSpec& spec)
    : potential_(p), spec_(spec) {
  if (!(spec.k_max > 0.0) || spec.n_k < 16 || !(spec.r_max > 0.0) || !(spec.h > 0.0)) {
    fail(ErrorKind::invalid_argument, "transform needs k_max > 0, n_k >= 16, r_max > 0, h > 0");
  }
  const auto bps = p.breakpoints();
  grid_ = RadialGrid::build(spec.r_max, spec.h, bps);
  const std::size_t n_r = grid_.size();

  const double phase_span = spec.k_max * grid_.r_max();
  const std::size_t panels =
      std::max<std::size_t>((spec.n_k + 15) / 16, static_cast<std::size_t>(std::ceil(phase_span / 8.0)));
  const auto rule = gauss_legendre_panels(0.0, spec.k_max, panels);
  k_ = rule.nodes;
  kw_ = rule.weights;
  const std::size_t n_k = k_.size();
  delta_.assign(n_k, 0.0);
  states_.resize(static_cast<Eigen::Index>(n_r), static_cast<Eigen::Index>(n_k));
  sines_.resize(static_cast<Eigen::Index>(n_r), static_cast<Eigen::Index>(n_k));

  // Match to sin(k r + delta) at the first node past the support of V.
  std::size_t match = n_r - 1;
  const double support = p.support_radius();
  if (p.is_zero()) {
    match = 0;
  } else if (std::isfinite(support)) {
    for (std::size_t i = 0; i < n_r; ++i) {
      if (grid_[i] >= support) {
        match = i;
        break;
      }
    }
  }
  // Half-interval potential samples shared by every k.
  std::vector<double> va(n_r, 0.0), vm(n_r, 0.0), vb(n_r, 0.0);
  for (std::size_t i = 0; i < match; ++i) {
    const double a = grid_[i], b = grid_[i + 1];
    va[i] = 0.5 * potential_inside(p, a, a, b);
    vm[i] = 0.5 * p(0.5 * (a + b));
    vb[i] = 0.5 * potential_inside(p, b, a, b);
  }

  std::vector<double> u(match + 1);
  double worst_amplitude = 0.0;
  for (std::size_t j = n_k; j-- > 0;) {
    const double k = k_[j];
    const double k2 = k * k;
    for (std::size_t i = 0; i < n_r; ++i) {
      sines_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::sin(k * grid_[i]);
    }
    double delta = 0.0;
    double amp = 1.0;
    int flip = 0;
    if (match > 0) {
      double uu = 0.0, w = 1.0;
      u[0] = 0.0;
      for (std::size_t i = 0; i < match; ++i) {
        const double h = grid_[i + 1] - grid_[i];
        const double ca = va[i] - k2, cm = vm[i] - k2, cb = vb[i] - k2;
        const double k1u = w, k1w = ca * uu;
        const double k2u = w + 0.5 * h * k1w, k2w = cm * (uu + 0.5 * h * k1u);
        const double k3u = w + 0.5 * h * k2w, k3w = cm * (uu + 0.5 * h * k2u);
        const double k4u = w + h * k3w, k4w = cb * (uu + h * k3u);
        uu += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        u[i + 1] = uu;
      }
      const double rs = grid_[match];
      const double theta = std::atan2(k * uu, w);
      amp = std::hypot(uu, w / k);
      const double raw = theta - k * rs;
      double m = std::round(raw / M_PI);
      if (j + 1 < n_k) {
        // Continue the branch from the next larger k.
        m = std::round((raw - delta_[j + 1]) / M_PI);
      }
      delta = raw - m * M_PI;
      flip = static_cast<int>(std::fmod(std::abs(m), 2.0));
    }
    delta_[j] = delta;
    const double sign = flip ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n_r; ++i) {
      double val;
      if (i <= match && match > 0) {
        val = sign * u[i] / amp;
        worst_amplitude = std::max(worst_amplitude, std::abs(val));
      } else {
        val = std::sin(k * grid_[i] + delta);
      }
      states_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = val;
    }
  }
  resonance_ = !std::isfinite(worst_amplitude) || worst_amplitude > 1e3;

  const RadialFunction probe = radial_gaussian(grid_, 8.0 / spec.k_max);
  for (bool free : {false, true}) {
    const auto back = inverse(forward(probe, free), free);
    defect_ = std::max(defect_, l2_distance(grid_, back, probe) / grid_.norm(probe));
  }
}

RadialFunction ScatteringTransform::forward(std::span<const std::complex<double>> g, bool free) const {
  if (g.size() != grid_.size()) fail(ErrorKind::grid_mismatch, "forward transform: input does not match grid");
  const Eigen::MatrixXd& s = free ? sines_ : states_;
  const Eigen::Map<const Eigen::VectorXd> w(grid_.weights().data(), static_cast<Eigen::Index>(grid_.size()));
  const Eigen::VectorXd re = kSqrt2OverPi * (s.transpose() * real_part(g).cwiseProduct(w));
  const Eigen::VectorXd im = kSqrt2OverPi * (s.transpose() * imag_part(g).cwiseProduct(w));
  return combine(re, im);
}

RadialFunction ScatteringTransform::inverse(std::span<const std::complex<double>> c, bool free) const {
  if (c.size() != k_.size()) fail(ErrorKind::grid_mismatch, "inverse transform: input does not match k grid");
  const Eigen::MatrixXd& s = free ? sines_ : states_;
  const Eigen::Map<const Eigen::VectorXd> w(kw_.data(), static_cast<Eigen::Index>(kw_.size()));
  const Eigen::VectorXd re = kSqrt2OverPi * (s * real_part(c).cwiseProduct(w));
  const Eigen::VectorXd im = kSqrt2OverPi * (s * imag_part(c).cwiseProduct(w));
  return combine(re, im);
}

ScatteringTransform build_transform(const Potential& p, const TransformSpec& spec) {
  TransformSpec s = spec;
  const double range = p.is_zero() ? 1.0 : p.range();
  if (!(s.k_max > 0.0)) s.k_max = 8.0;
  if (!(s.r_max > 0.0)) s.r_max = std::max(20.0 * range, 320.0 / s.k_max);
  if (!(s.h > 0.0)) s.h = std::min(range / 100.0, 0.1 / s.k_max);
  if (!(s.completeness_tol > 0.0)) fail(ErrorKind::invalid_argument, "completeness tolerance must be > 0");
  ScatteringTransform t(p, s);
  if (t.completeness_defect() > s.completeness_tol) {
    fail(ErrorKind::insufficient_resolution,
         "completeness defect " + std::to_string(t.completeness_defect()) + " exceeds " +
             std::to_string(s.completeness_tol) + " (k_max=" + std::to_string(s.k_max) +
             ", n_k=" + std::to_string(t.k().size()) + ")");
  }
  return t;
}

RadialFunction apply_wave_operator(const ScatteringTransform& t, std::span<const std::complex<double>> g,
                                   bool adjoint) {
  auto c = t.forward(g, /*free=*/!adjoint);
  const auto& delta = t.phase();
  const double sign = adjoint ? 1.0 : -1.0;
  for (std::size_t j = 0; j < c.size(); ++j) c[j] *= std::polar(1.0, sign * delta[j]);
  return t.inverse(c, /*free=*/adjoint);
}

RadialFunction dilate(const RadialGrid& grid, std::span<const std::complex<double>> u, double n,
                      const RadialGrid& target) {
  if (u.size() != grid.size()) fail(ErrorKind::grid_mismatch, "dilation: input does not match grid");
  const auto& r = grid.nodes();
  const double amp = std::sqrt(n);
  RadialFunction out(target.size());
  for (std::size_t j = 0; j < target.size(); ++j) {
    const double x = n * target[j];
    if (x > r.back() * (1.0 + 1e-12)) {
      out[j] = 0.0;
      continue;
    }
    auto it = std::lower_bound(r.begin(), r.end(), x);
    std::size_t i = static_cast<std::size_t>(it - r.begin());
    if (i < r.size() && std::abs(r[i] - x) <= 1e-10 * grid.max_spacing()) {
      out[j] = amp * u[i];
      continue;
    }
    if (i > 0 && std::abs(r[i - 1] - x) <= 1e-10 * grid.max_spacing()) {
      out[j] = amp * u[i - 1];
      continue;
    }
    // Four-point Lagrange interpolation around x.
    std::size_t lo = i >= 2 ? i - 2 : 0;
    lo = std::min(lo, r.size() - 4);
    std::complex<double> val = 0.0;
    for (std::size_t a = lo; a < lo + 4; ++a) {
      double l = 1.0;
      for (std::size_t b = lo; b < lo + 4; ++b) {
        if (b != a) l *= (x - r[b]) / (r[a] - r[b]);
      }
      val += l * u[a];
    }
    out[j] = amp * val;
  }
  return out;
}

RadialFunction radial_gaussian(const RadialGrid& grid, double width) {
  // int_0^inf r^2 exp(-r^2/s^2) dr = sqrt(pi) s^3 / 4, so 4 pi times that is (pi s^2)^{3/2}.
  const double c = 1.0 / std::pow(M_PI * width * width, 0.75);
  RadialFunction u(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid[i];
    u[i] = c * r * std::exp(-0.5 * r * r / (width * width));
  }
  return u;
}

double l2_distance(const RadialGrid& grid, std::span<const std::complex<double>> a,
                   std::span<const std::complex<double>> b) {
  if (a.size() != b.size()) fail(ErrorKind::grid_mismatch, "l2 distance: length mismatch");
  RadialFunction d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return grid.norm(d);
}

}  // namespace condensate
