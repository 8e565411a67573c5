#include "condensate/kernel_integrals.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "condensate/error.hpp"
#include "condensate/quadrature.hpp"

namespace condensate {

namespace {

// Integrand as a function of r = |q| and c = cos(angle(q, p)), P = |p|.
double integrand(KernelKind kind, double r, double c, double big_p) {
  const double qp = r * big_p * c;                  // q.p
  const double pq2 = big_p * big_p - 2.0 * qp + r * r;  // |p - q|^2
  if (kind == KernelKind::two_body_form) {
    const double dot = qp - r * r;  // q.(p - q)
    return 1.0 / (dot * dot + r * r + pq2 + 1.0);
  }
  return (std::sqrt(r) + 1.0) / ((1.0 + r * r) * (1.0 + pq2));
}

double angular(KernelKind kind, double r, double big_p) {
  auto f = [&](double c) { return integrand(kind, r, c, big_p); };
  if (big_p == 0.0 || r == 0.0) return 2.0 * f(0.0);
  if (kind == KernelKind::half_power_resolvent) {
    // int_{-1}^{1} dc / (A - B c) = log((A + B) / (A - B)) / B, with A - B = 1 + (r - P)^2.
    const double b = 2.0 * r * big_p;
    const double amb = 1.0 + (r - big_p) * (r - big_p);
    return (std::sqrt(r) + 1.0) / (1.0 + r * r) * std::log1p(2.0 * b / amb) / b;
  }
  // For the two-body form the integrand peaks where q.(p - q) = 0, i.e. c = r / P.
  std::vector<double> cuts{-1.0};
  const double c0 = r / big_p;
  if (kind == KernelKind::two_body_form && c0 < 1.0) cuts.push_back(c0);
  cuts.push_back(1.0);
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) s += integrate_adaptive(f, cuts[i], cuts[i + 1], 1e-11).value;
  return s;
}

}  // namespace

double kernel_integral(KernelKind kind, const std::array<double, 3>& p) {
  const double big_p = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
  auto radial = [&](double r) { return 2.0 * M_PI * r * r * angular(kind, r, big_p); };
  // The half-power kernel decays like r^{-3/2}; r = a / w^2 maps [a, inf) to
  // (0, 1] with a bounded integrand for both kernels.
  auto tail = [&](double a) {
    auto g = [&](double w) { return w == 0.0 ? 0.0 : radial(a / (w * w)) * 2.0 * a / (w * w * w); };
    return integrate_adaptive(g, 0.0, 1.0, 1e-9, 20);
  };
  std::vector<double> cuts{0.0};
  if (big_p > 0.0) {
    cuts.push_back(0.5 * big_p);
    cuts.push_back(big_p);
    cuts.push_back(2.0 * big_p);
  } else {
    cuts.push_back(1.0);
  }
  double total = 0.0;
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const auto piece = integrate_adaptive(radial, cuts[i], cuts[i + 1], 1e-9, 20);
    total += piece.value;
    err += piece.error;
  }
  const auto last = tail(cuts.back());
  total += last.value;
  err += last.error;
  if (!std::isfinite(total) || err > 1e-5 * std::abs(total)) {
    fail(ErrorKind::quadrature, "kernel integral did not converge (error estimate " + std::to_string(err) + ")");
  }
  return total;
}

double kernel_integral_at_origin(KernelKind kind) {
  const double pi2 = M_PI * M_PI;
  if (kind == KernelKind::two_body_form) return pi2;
  // 4 pi int r^{5/2} / (1 + r^2)^2 dr = 2 pi B(7/4, 1/4) = (3/2) sqrt(2) pi^2.
  return pi2 + 1.5 * std::sqrt(2.0) * pi2;
}

}  // namespace condensate
