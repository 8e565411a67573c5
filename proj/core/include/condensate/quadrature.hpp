#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace condensate {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;  // integral of |f|, the scale the error is judged against
};

// Adaptive 31-point Gauss-Kronrod on [a, b]; b may be +infinity.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol = 1e-13, unsigned max_depth = 30);

// Same, but throws ErrorKind::quadrature when the error estimate exceeds
// required_rel_tol relative to the L1 mass of the integrand.
double integrate_checked(const std::function<double(double)>& f, double a, double b, double required_rel_tol,
                         const char* what);

struct NodesWeights {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Composite 16-point Gauss-Legendre rule with `panels` equal panels on [a, b].
NodesWeights gauss_legendre_panels(double a, double b, std::size_t panels);

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double max_residual = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace condensate
