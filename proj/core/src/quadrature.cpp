#include "condensate/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <string>

#include "condensate/error.hpp"

namespace condensate {

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double rel_tol,
                                    unsigned max_depth) {
  QuadratureResult r;
  if (a == b) return r;
  r.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, rel_tol, &r.error,
                                                                          &r.l1);
  return r;
}

double integrate_checked(const std::function<double(double)>& f, double a, double b, double required_rel_tol,
                         const char* what) {
  // Aim two digits below the requirement, but not into roundoff: a target near
  // 1e-13 can sit under the error estimate's own noise and bisect to full depth.
  const double target = std::max(1e-2 * required_rel_tol, 1e-12);
  const auto r = integrate_adaptive(f, a, b, target);
  if (!std::isfinite(r.value) || r.error > required_rel_tol * std::max(r.l1, 1e-300)) {
    fail(ErrorKind::quadrature, std::string(what) + ": error estimate " + std::to_string(r.error) +
                                    " exceeds tolerance for integral " + std::to_string(r.value));
  }
  return r.value;
}

NodesWeights gauss_legendre_panels(double a, double b, std::size_t panels) {
  using rule = boost::math::quadrature::gauss<double, 16>;
  const auto& x = rule::abscissa();  // non-negative half of the symmetric rule
  const auto& w = rule::weights();
  NodesWeights out;
  out.nodes.reserve(panels * 16);
  out.weights.reserve(panels * 16);
  const double width = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + width * static_cast<double>(p);
    const double mid = lo + 0.5 * width;
    const double half = 0.5 * width;
    // Emit the panel's nodes in ascending order.
    for (std::size_t i = x.size(); i-- > 0;) {
      out.nodes.push_back(mid - half * x[i]);
      out.weights.push_back(half * w[i]);
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
      out.nodes.push_back(mid + half * x[i]);
      out.weights.push_back(half * w[i]);
    }
  }
  return out;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) fail(ErrorKind::invalid_argument, "line fit needs >= 2 matched points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    fit.max_residual = std::max(fit.max_residual, std::abs(y[i] - fit.intercept - fit.slope * x[i]));
  }
  return fit;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx, ly;
  lx.reserve(x.size());
  ly.reserve(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return fit_line(lx, ly).slope;
}

}  // namespace condensate
