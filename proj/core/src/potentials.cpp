#include "condensate/potentials.hpp"

#include <math.h>  // boost 1.74 pchip calls unqualified isnan

#include <algorithm>
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "condensate/error.hpp"
#include "condensate/quadrature.hpp"

namespace condensate {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// exp(-x^2) drops below 1e-16 at x = sqrt(ln 1e16).
const double kGaussianCut = std::sqrt(16.0 * std::log(10.0));

}  // namespace

struct Potential::Table {
  std::vector<double> r;
  std::vector<double> v;
  boost::math::interpolators::pchip<std::vector<double>> spline;

  Table(std::vector<double> rr, std::vector<double> vv)
      : r(rr), v(vv), spline(std::move(rr), std::move(vv)) {}
};

const char* to_string(PotentialFamily family) {
  switch (family) {
    case PotentialFamily::zero: return "zero";
    case PotentialFamily::soft_sphere: return "soft-sphere";
    case PotentialFamily::gaussian: return "gaussian";
    case PotentialFamily::tabulated: return "tabulated";
  }
  return "unknown";
}

Potential Potential::zero() { return Potential{}; }

Potential Potential::soft_sphere(double v0, double radius) {
  if (!(v0 >= 0.0) || !std::isfinite(v0)) fail(ErrorKind::repulsivity_violated, "soft-sphere height must be >= 0");
  if (!(radius > 0.0) || !std::isfinite(radius)) fail(ErrorKind::invalid_argument, "soft-sphere radius must be > 0");
  Potential p;
  p.family_ = PotentialFamily::soft_sphere;
  p.amplitude_ = v0;
  p.length_ = radius;
  return p;
}

Potential Potential::gaussian(double v0, double width) {
  if (!(v0 >= 0.0) || !std::isfinite(v0)) fail(ErrorKind::repulsivity_violated, "gaussian height must be >= 0");
  if (!(width > 0.0) || !std::isfinite(width)) fail(ErrorKind::invalid_argument, "gaussian width must be > 0");
  Potential p;
  p.family_ = PotentialFamily::gaussian;
  p.amplitude_ = v0;
  p.length_ = width;
  return p;
}

Potential Potential::tabulated(std::vector<double> r, std::vector<double> v, double tail_exponent) {
  if (r.size() != v.size()) fail(ErrorKind::invalid_argument, "tabulated potential: r and V differ in length");
  if (r.size() < 4) fail(ErrorKind::invalid_argument, "tabulated potential needs at least 4 samples");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!std::isfinite(r[i]) || !std::isfinite(v[i]) || r[i] < 0.0)
      fail(ErrorKind::invalid_argument, "tabulated potential: non-finite or negative radius at row " + std::to_string(i));
    if (v[i] < 0.0)
      fail(ErrorKind::repulsivity_violated, "negative sample V=" + std::to_string(v[i]) + " at r=" + std::to_string(r[i]));
    if (i > 0 && !(r[i] > r[i - 1]))
      fail(ErrorKind::invalid_argument, "tabulated potential: radii must be strictly ascending");
  }
  if (!(tail_exponent > 0.0)) fail(ErrorKind::invalid_argument, "tabulated potential: tail exponent must be > 0");
  Potential p;
  p.family_ = PotentialFamily::tabulated;
  p.amplitude_ = *std::max_element(v.begin(), v.end());
  p.length_ = r.back();
  p.sigma_ = tail_exponent;
  p.table_ = std::make_shared<const Table>(std::move(r), std::move(v));
  return p;
}

Potential Potential::tabulated_csv(const std::filesystem::path& path, double tail_exponent) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open potential table " + path.string());
  std::vector<double> r, v;
  std::string line;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double a = 0, b = 0;
    if (row >> a >> b) {
      r.push_back(a);
      v.push_back(b);
    }
  }
  return tabulated(std::move(r), std::move(v), tail_exponent);
}

double Potential::base_value(double r) const {
  r = std::abs(r);
  switch (family_) {
    case PotentialFamily::zero:
      return 0.0;
    case PotentialFamily::soft_sphere:
      return r < length_ ? amplitude_ : 0.0;
    case PotentialFamily::gaussian: {
      const double x = r / length_;
      return amplitude_ * std::exp(-x * x);
    }
    case PotentialFamily::tabulated: {
      const auto& t = *table_;
      if (r <= t.r.front()) return t.v.front();
      if (r <= t.r.back()) return std::max(0.0, t.spline(r));
      if (!std::isfinite(sigma_)) return 0.0;
      return t.v.back() * std::pow(t.r.back() / r, sigma_);
    }
  }
  return 0.0;
}

double Potential::operator()(double r) const {
  if (scale_ == 1) return base_value(r);
  const double n = scale_;
  return n * n * base_value(n * r);
}

Potential Potential::base() const {
  Potential p = *this;
  p.scale_ = 1;
  return p;
}

const std::vector<double>& Potential::table_r() const {
  static const std::vector<double> empty;
  return table_ ? table_->r : empty;
}

const std::vector<double>& Potential::table_v() const {
  static const std::vector<double> empty;
  return table_ ? table_->v : empty;
}

bool Potential::is_zero() const noexcept { return family_ == PotentialFamily::zero || amplitude_ == 0.0; }

double Potential::range() const {
  if (family_ == PotentialFamily::zero) return 1.0;
  return length_ / scale_;
}

double Potential::support_radius() const {
  switch (family_) {
    case PotentialFamily::zero: return 0.0;
    case PotentialFamily::soft_sphere: return length_ / scale_;
    case PotentialFamily::gaussian: return kGaussianCut * length_ / scale_;
    case PotentialFamily::tabulated: return std::isfinite(sigma_) ? kInf : length_ / scale_;
  }
  return kInf;
}

double Potential::max_value() const {
  const double n = scale_;
  return n * n * amplitude_;
}

std::vector<double> Potential::breakpoints() const {
  std::vector<double> out;
  if (family_ == PotentialFamily::soft_sphere) out.push_back(length_ / scale_);
  if (family_ == PotentialFamily::tabulated) {
    if (table_->r.front() > 0.0) out.push_back(table_->r.front() / scale_);
    out.push_back(table_->r.back() / scale_);
  }
  return out;
}

double Potential::left_limit(double r) const { return (*this)(r * (1.0 - 1e-12)); }

double Potential::right_limit(double r) const { return (*this)(r * (1.0 + 1e-12)); }

Potential scale(const Potential& p, int n) {
  if (n < 1) fail(ErrorKind::invalid_scale, "scale parameter N=" + std::to_string(n) + " must be >= 1");
  Potential out = p;
  out.scale_ = p.scale_ * n;
  return out;
}

namespace {

// Integral over [0, inf) of F(V(r)) r^m, split at breakpoints. For a power
// tail V = Vb (b/r)^sigma beyond b the remaining piece of V^q r^m is added
// in closed form.
double radial_moment(const Potential& p, double q, int m, const char* what) {
  const double support = p.support_radius();
  const bool power_tail = !std::isfinite(support);
  const auto bps = p.breakpoints();
  const double end = power_tail ? bps.back() : support;
  const std::vector<double> edges = quadrature_edges(p, end);

  auto integrand = [&](double r) { return std::pow(p(r), q) * std::pow(r, m); };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i + 1] > edges[i]) total += integrate_checked(integrand, edges[i], edges[i + 1], 1e-9, what);
  }
  if (power_tail) {
    const double b = end;
    const double vb = p(b);
    const double expo = q * p.sigma() - m - 1.0;
    if (vb > 0.0) {
      if (expo <= 0.0) return kInf;
      total += std::pow(vb, q) * std::pow(b, m + 1.0) / expo;
    }
  }
  return total;
}

double second_moment_sup(const Potential& p) {
  auto f = [&](double r) { return r * r * p(r); };
  std::vector<double> edges{0.0};
  for (double b : p.breakpoints()) edges.push_back(b);
  const double support = p.support_radius();
  if (std::isfinite(support) && support > edges.back()) edges.push_back(support);
  double best = 0.0;
  for (double b : p.breakpoints()) best = std::max(best, b * b * p.left_limit(b));
  constexpr int samples = 4096;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i];
    const double w = (edges[i + 1] - a) / samples;
    if (!(w > 0.0)) continue;
    int arg = 0;
    double top = -1.0;
    for (int j = 0; j <= samples; ++j) {
      const double r = j == samples ? edges[i + 1] - 1e-15 * w : a + j * w;
      const double v = f(r);
      if (v > top) {
        top = v;
        arg = j;
      }
    }
    best = std::max(best, top);
    const double lo = a + std::max(0, arg - 1) * w;
    const double hi = a + std::min(samples, arg + 1) * w;
    auto neg = [&](double r) { return -f(r); };
    const auto [x, fx] = boost::math::tools::brent_find_minima(neg, lo, hi, 52);
    (void)x;
    best = std::max(best, -fx);
  }
  // A power tail r^{2-sigma} (sigma > 3) is decreasing, so its sup sits at the table end.
  return best;
}

}  // namespace

std::vector<double> quadrature_edges(const Potential& p, double end) {
  if (!(end >= 0.0)) fail(ErrorKind::invalid_argument, "quadrature edges need end >= 0");
  std::vector<double> edges{0.0};
  for (double b : p.breakpoints()) edges.push_back(b);
  if (p.family() == PotentialFamily::tabulated) {
    for (double r : p.table_r()) edges.push_back(r / p.scale());
  }
  std::erase_if(edges, [end](double r) { return r >= end; });
  edges.push_back(end);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

PotentialNorms norms(const Potential& p) {
  PotentialNorms out;
  if (p.is_zero()) return out;
  if (p.sigma() <= 3.0) {
    fail(ErrorKind::divergent_norm, "decay exponent sigma=" + std::to_string(p.sigma()) + " <= 3 is not integrable");
  }
  constexpr double four_pi = 4.0 * M_PI;
  out.l1 = four_pi * radial_moment(p, 1.0, 2, "l1 norm");
  out.l2 = std::sqrt(four_pi * radial_moment(p, 2.0, 2, "l2 norm"));
  out.l3half = std::pow(four_pi * radial_moment(p, 1.5, 2, "l3/2 norm"), 2.0 / 3.0);
  out.first_moment = four_pi * radial_moment(p, 1.0, 3, "first moment");
  out.hardy_integral = four_pi * radial_moment(p, 1.0, 1, "hardy integral");
  out.second_moment_sup = second_moment_sup(p);
  out.rho = out.second_moment_sup + out.hardy_integral;
  return out;
}

}  // namespace condensate
