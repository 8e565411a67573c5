#include "condensate/pair_bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>

#include "condensate/error.hpp"
#include "condensate/quadrature.hpp"
#include "condensate/random.hpp"

namespace condensate {

namespace {

using cplx = std::complex<double>;
using cvec3 = std::array<cplx, 3>;

// conj(f) g for two orbitals: C exp(-a |x|^2 + b.x).
struct GaussianProduct {
  double a = 0.0;
  cvec3 b{};
  cplx c{};
};

GaussianProduct overlap_density(const GaussianOrbital& f, const GaussianOrbital& g) {
  for (const auto* o : {&f, &g}) {
    if (!(o->width > 0.0) || !std::isfinite(o->width)) fail(ErrorKind::invalid_argument, "degenerate Gaussian width");
  }
  const double af = 1.0 / (2.0 * f.width * f.width);
  const double ag = 1.0 / (2.0 * g.width * g.width);
  GaussianProduct out;
  out.a = af + ag;
  double shift = 0.0;
  for (int i = 0; i < 3; ++i) {
    out.b[i] = cplx(2.0 * af * f.center[i] + 2.0 * ag * g.center[i], g.momentum[i] - f.momentum[i]);
    shift += af * f.center[i] * f.center[i] + ag * g.center[i] * g.center[i];
  }
  const double norm = std::pow(M_PI * f.width * f.width, -0.75) * std::pow(M_PI * g.width * g.width, -0.75);
  out.c = norm * std::exp(-shift);
  return out;
}

cplx dot(const cvec3& x, const cvec3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; }

// int G_A(x2 + v) G_B(x2) dx2 = K exp(-gamma |v|^2 + eta.v).
struct SeparationKernel {
  double gamma = 0.0;
  cvec3 eta{};
  cplx k{};
};

SeparationKernel separation_kernel(const GaussianPairState& phi, const GaussianPairState& psi) {
  const auto ga = overlap_density(phi.first, psi.first);
  const auto gb = overlap_density(phi.second, psi.second);
  const double s = ga.a + gb.a;
  SeparationKernel out;
  out.gamma = ga.a * gb.a / s;
  cvec3 sum{};
  for (int i = 0; i < 3; ++i) {
    sum[i] = ga.b[i] + gb.b[i];
    out.eta[i] = (gb.a * ga.b[i] - ga.a * gb.b[i]) / s;
  }
  out.k = ga.c * gb.c * std::pow(M_PI / s, 1.5) * std::exp(dot(sum, sum) / (4.0 * s));
  return out;
}

// sinh(z) / z - 1, accurate near z = 0.
cplx sinhc_minus_one(cplx z) {
  const cplx z2 = z * z;
  if (std::abs(z) < 1e-2) return z2 / 6.0 * (1.0 + z2 / 20.0 * (1.0 + z2 / 42.0));
  return std::sinh(z) / z - 1.0;
}

// Angular average of exp(-gamma r^2 + eta.v) over |v| = r, minus one.
cplx angular_minus_one(double gamma, cplx s, double r) {
  const double e = std::expm1(-gamma * r * r);
  const cplx sh = sinhc_minus_one(s * r);
  return e * (1.0 + sh) + sh;
}

// int V(|y|) [angular(alpha |y|) - 1] d^3y, so the full pairing is K (int V + this).
// mass is int V.
cplx scaled_deviation(const Potential& v, double alpha, const SeparationKernel& kern, double mass) {
  const cplx s = std::sqrt(dot(kern.eta, kern.eta));
  const double gamma = kern.gamma * alpha * alpha;
  const double rs = std::abs(s.real()) * alpha;
  // Past r_cut the Gaussian factor is below e^{-40} even against the sinh growth.
  const double r_cut = (rs + std::sqrt(rs * rs + 160.0 * gamma)) / (2.0 * gamma);
  // When V reaches past r_cut the deviation there is -V, so integrate the
  // angular average itself and subtract the mass instead.
  const bool truncated = r_cut < v.support_radius();
  const double end = std::min(r_cut, v.support_radius());
  const std::vector<double> edges = quadrature_edges(v, end);
  cplx total = 0.0;
  for (int part = 0; part < 2; ++part) {
    auto f = [&](double r) {
      cplx a = angular_minus_one(gamma, s, alpha * r);
      if (truncated) a += 1.0;
      return 4.0 * M_PI * r * r * v(r) * (part == 0 ? a.real() : a.imag());
    };
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) acc += integrate_adaptive(f, edges[i], edges[i + 1], 1e-12, 12).value;
    total += part == 0 ? cplx(acc, 0.0) : cplx(0.0, acc);
  }
  return truncated ? total - mass : total;
}

// int V d^3x; cheaper than the full norms() table.
double potential_mass(const Potential& v) {
  const double support = v.support_radius();
  if (!std::isfinite(support)) return norms(v).l1;  // power tail: closed-form remainder lives there
  const std::vector<double> edges = quadrature_edges(v, support);
  auto f = [&](double r) { return 4.0 * M_PI * r * r * v(r); };
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) acc += integrate_adaptive(f, edges[i], edges[i + 1], 1e-12, 20).value;
  return acc;
}

struct MomentStats {
  std::array<double, 3> mean{};
  double variance = 0.0;  // per component
};

MomentStats momentum_stats(const GaussianOrbital& f) {
  if (!(f.width > 0.0) || !std::isfinite(f.width)) fail(ErrorKind::invalid_argument, "degenerate Gaussian width");
  return {f.momentum, 1.0 / (2.0 * f.width * f.width)};
}

double dot3(const std::array<double, 3>& x, const std::array<double, 3>& y) {
  return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

}  // namespace

std::complex<double> pair_matrix_element(const Potential& v, double alpha, const GaussianPairState& phi,
                                         const GaussianPairState& psi) {
  if (!(alpha > 0.0)) fail(ErrorKind::invalid_argument, "alpha must be positive");
  const auto kern = separation_kernel(phi, psi);
  const double mass = potential_mass(v);
  return kern.k * (mass + scaled_deviation(v, alpha, kern, mass));
}

std::complex<double> pair_matrix_element(const Potential& v, const GaussianPairState& phi,
                                         const GaussianPairState& psi) {
  return pair_matrix_element(v, 1.0, phi, psi);
}

std::complex<double> contact_matrix_element(const GaussianPairState& phi, const GaussianPairState& psi) {
  return separation_kernel(phi, psi).k;
}

double two_body_form(const GaussianPairState& psi) {
  const auto p1 = momentum_stats(psi.first);
  const auto p2 = momentum_stats(psi.second);
  const double m12 = dot3(p1.mean, p2.mean);
  const double m11 = dot3(p1.mean, p1.mean);
  const double m22 = dot3(p2.mean, p2.mean);
  const double cross = m12 * m12 + p2.variance * m11 + p1.variance * m22 + 3.0 * p1.variance * p2.variance;
  return cross + (m11 + 3.0 * p1.variance) + (m22 + 3.0 * p2.variance) + 1.0;
}

double relative_form(const GaussianPairState& psi) {
  const auto p1 = momentum_stats(psi.first);
  const auto p2 = momentum_stats(psi.second);
  const double s = p1.variance + p2.variance;
  std::array<double, 3> diff{}, sum{};
  for (int i = 0; i < 3; ++i) {
    diff[i] = p1.mean[i] - p2.mean[i];
    sum[i] = p1.mean[i] + p2.mean[i];
  }
  const double d2 = dot3(diff, diff);
  const double fourth = d2 * d2 + 10.0 * s * d2 + 15.0 * s * s;
  return fourth + (dot3(sum, sum) + 3.0 * s) + 1.0;
}

double pair_bound_constant() { return M_PI * M_PI / std::pow(2.0 * M_PI, 3); }

std::pair<GaussianPairState, GaussianPairState> reference_pair_states() {
  GaussianPairState phi, psi;
  phi.second.center = {0.5, 0.0, 0.0};
  phi.second.momentum = {0.0, 0.3, 0.0};
  psi.first.momentum = {0.2, 0.0, 0.0};
  return {phi, psi};
}

GaussianPairState sample_pair_state(std::uint64_t seed, std::uint64_t index, const PairSampling& ranges) {
  auto rng = sample_stream(seed, index);
  std::uniform_real_distribution<double> centre(-ranges.center_range, ranges.center_range);
  std::uniform_real_distribution<double> width(ranges.width_min, ranges.width_max);
  std::uniform_real_distribution<double> momentum(-ranges.momentum_range, ranges.momentum_range);
  GaussianPairState out;
  for (auto* orb : {&out.first, &out.second}) {
    for (auto& c : orb->center) c = centre(rng);
    for (auto& k : orb->momentum) k = momentum(rng);
    orb->width = width(rng);
  }
  return out;
}

namespace {

// A pair of product states flattened to 28 coordinates: for each of the four
// orbitals, centre (3), momentum (3), width (1).
constexpr std::size_t kPairParams = 28;
using PairParams = std::array<double, kPairParams>;

PairParams pack(const GaussianPairState& phi, const GaussianPairState& psi) {
  PairParams x{};
  std::size_t i = 0;
  for (const auto* orb : {&phi.first, &phi.second, &psi.first, &psi.second}) {
    for (double c : orb->center) x[i++] = c;
    for (double k : orb->momentum) x[i++] = k;
    x[i++] = orb->width;
  }
  return x;
}

std::pair<GaussianPairState, GaussianPairState> unpack(const PairParams& x) {
  std::pair<GaussianPairState, GaussianPairState> out;
  std::size_t i = 0;
  for (auto* orb : {&out.first.first, &out.first.second, &out.second.first, &out.second.second}) {
    for (auto& c : orb->center) c = x[i++];
    for (auto& k : orb->momentum) k = x[i++];
    orb->width = x[i++];
  }
  return out;
}

std::pair<double, double> param_bounds(const PairSampling& r, std::size_t i) {
  const std::size_t slot = i % 7;
  if (slot < 3) return {-r.center_range, r.center_range};
  if (slot < 6) return {-r.momentum_range, r.momentum_range};
  return {r.width_min, r.width_max};
}

double bound_ratio(const Potential& v, double mass, const GaussianPairState& phi, const GaussianPairState& psi) {
  const double lhs = std::abs(pair_matrix_element(v, phi, psi));
  return lhs == 0.0 ? 0.0 : lhs / (mass * std::sqrt(two_body_form(phi) * two_body_form(psi)));
}

// Coordinate (compass) ascent inside the sampling box, step from a quarter of
// each coordinate's range down to 1e-4 of it.
double ascend(const Potential& v, double mass, const PairSampling& ranges, PairParams x) {
  auto eval = [&](const PairParams& y) {
    const auto [phi, psi] = unpack(y);
    return bound_ratio(v, mass, phi, psi);
  };
  double best = eval(x);
  for (double frac = 0.25; frac >= 1e-4; frac *= 0.5) {
    for (int round = 0; round < 50; ++round) {
      bool improved = false;
      for (std::size_t i = 0; i < kPairParams; ++i) {
        const auto [lo, hi] = param_bounds(ranges, i);
        for (double sign : {1.0, -1.0}) {
          PairParams y = x;
          y[i] = std::clamp(x[i] + sign * frac * (hi - lo), lo, hi);
          if (y[i] == x[i]) continue;
          const double r = eval(y);
          if (r > best) {
            best = r;
            x = y;
            improved = true;
          }
        }
      }
      if (!improved) break;
    }
  }
  return best;
}

// Identical coincident orbitals at rest, the common width scanned over its range.
PairParams coincident_candidate(const Potential& v, double mass, const PairSampling& ranges) {
  GaussianOrbital orb;
  orb.center = {0.0, 0.0, 0.0};
  orb.momentum = {0.0, 0.0, 0.0};
  double best = -1.0;
  double best_width = ranges.width_min;
  for (int j = 0; j <= 32; ++j) {
    orb.width = ranges.width_min + (ranges.width_max - ranges.width_min) * j / 32.0;
    const GaussianPairState s{orb, orb};
    const double r = bound_ratio(v, mass, s, s);
    if (r > best) {
      best = r;
      best_width = orb.width;
    }
  }
  orb.width = best_width;
  const GaussianPairState s{orb, orb};
  return pack(s, s);
}

}  // namespace

PairBoundResult pair_interaction_bound(const Potential& v, std::size_t samples, std::uint64_t seed,
                                       const PairSampling& ranges, std::size_t refine) {
  if (!(ranges.width_min > 0.0) || ranges.width_max < ranges.width_min || ranges.center_range < 0.0 ||
      ranges.momentum_range < 0.0) {
    fail(ErrorKind::invalid_argument, "invalid pair sampling ranges");
  }
  const double mass = v.is_zero() ? 0.0 : potential_mass(v);
  PairBoundResult out;
  out.constant = pair_bound_constant();
  out.ratios.reserve(samples);
  std::vector<PairParams> params;
  params.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto phi = sample_pair_state(seed, 2 * i, ranges);
    const auto psi = sample_pair_state(seed, 2 * i + 1, ranges);
    const double ratio = mass == 0.0 ? 0.0 : bound_ratio(v, mass, phi, psi);
    out.ratios.push_back(ratio);
    params.push_back(pack(phi, psi));
    out.sampled_ratio_sup = std::max(out.sampled_ratio_sup, ratio);
  }
  out.ratio_sup = out.sampled_ratio_sup;
  if (mass == 0.0) return out;

  const PairParams structured = coincident_candidate(v, mass, ranges);
  {
    const auto [phi, psi] = unpack(structured);
    out.structured_ratio_sup = bound_ratio(v, mass, phi, psi);
  }
  out.ratio_sup = std::max({out.ratio_sup, out.structured_ratio_sup, ascend(v, mass, ranges, structured)});
  std::vector<std::size_t> order(samples);
  for (std::size_t i = 0; i < samples; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return out.ratios[a] > out.ratios[b]; });
  for (std::size_t j = 0; j < std::min(refine, samples); ++j) {
    out.ratio_sup = std::max(out.ratio_sup, ascend(v, mass, ranges, params[order[j]]));
  }
  return out;
}

ContactGapResult contact_limit_gap(const Potential& v, const GaussianPairState& phi, const GaussianPairState& psi,
                                   const std::vector<double>& alphas, double envelope_exponent) {
  const double mass = potential_mass(v);
  if (std::abs(mass - 1.0) > 1e-8) {
    fail(ErrorKind::unnormalized, "contact limit needs int V = 1, got " + std::to_string(mass));
  }
  if (alphas.empty()) fail(ErrorKind::invalid_argument, "contact limit needs at least one alpha");
  const auto kern = separation_kernel(phi, psi);
  const double scale = std::sqrt(two_body_form(psi) * relative_form(phi));
  ContactGapResult out;
  out.alphas = alphas;
  out.envelope_exponent = envelope_exponent;
  for (double alpha : alphas) {
    if (!(alpha > 0.0)) fail(ErrorKind::invalid_argument, "alpha must be positive");
    // (V_alpha - delta) pairs to K (int V - 1) + K * deviation.
    const double gap = std::abs(kern.k * ((mass - 1.0) + scaled_deviation(v, alpha, kern, mass)));
    out.gaps.push_back(gap);
    out.normalized_gaps.push_back(gap / scale);
  }
  out.fitted_constant = out.normalized_gaps.front() / std::pow(alphas.front(), envelope_exponent);
  out.nonincreasing = true;
  out.below_envelope = true;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (i > 0 && out.gaps[i] > out.gaps[i - 1] * (1.0 + 1e-8)) out.nonincreasing = false;
    const double envelope = out.fitted_constant * std::pow(alphas[i], envelope_exponent);
    if (out.normalized_gaps[i] > envelope * (1.0 + 1e-12)) out.below_envelope = false;
  }
  return out;
}

}  // namespace condensate
