#include "condensate/cutoff.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>
#include <algorithm>
#include <utility>
#include <cmath>
#include <random>
#include <string>

#include "condensate/error.hpp"
#include "condensate/random.hpp"

namespace condensate {

namespace {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

Vec3 diff(const Point3& a, const Point3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

struct PairTerms {
  double h = 0.0;
  Vec3 grad;  // grad h at x
  Mat3 hess;
};

PairTerms pair_terms(double ell, const Vec3& x) {
  const double rho = std::sqrt(x.squaredNorm() + ell * ell);
  PairTerms t;
  t.h = std::exp(-rho / ell);
  t.grad = -(t.h / (ell * rho)) * x;
  const Mat3 xx = x * x.transpose();
  t.hess = t.h * (xx / (ell * ell * rho * rho) - (Mat3::Identity() / rho - xx / (rho * rho * rho)) / ell);
  return t;
}

double coupling(const CutoffConfig& cfg) { return std::ldexp(1.0, cfg.n) / std::pow(cfg.ell, cfg.epsilon); }

// Sum over i <= k, j != i counts an unordered pair once per endpoint inside the first k.
double pair_weight(int i, int j, int k) { return (i < k ? 1.0 : 0.0) + (j < k ? 1.0 : 0.0); }

}  // namespace

CutoffConfig default_cutoff_config(int particles, int k, int n) {
  CutoffConfig cfg;
  cfg.particles = particles;
  cfg.ell = std::pow(static_cast<double>(particles), -0.4);
  cfg.epsilon = 0.1;
  cfg.k = k;
  cfg.n = n;
  return cfg;
}

void validate(const CutoffConfig& cfg) {
  if (!(cfg.ell > 0.0) || !std::isfinite(cfg.ell)) fail(ErrorKind::invalid_argument, "cutoff: ell must be > 0");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) fail(ErrorKind::invalid_argument, "cutoff: epsilon must lie in (0, 1)");
  if (cfg.n < 1) fail(ErrorKind::invalid_argument, "cutoff: n must be >= 1");
  if (cfg.k < 1 || cfg.k >= cfg.particles) fail(ErrorKind::invalid_argument, "cutoff: need 1 <= k < N");
}

double cutoff_h(double ell, const Point3& x) {
  return std::exp(-std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + ell * ell) / ell);
}

CutoffValues theta_eval(const CutoffConfig& cfg, std::span<const Point3> x) {
  validate(cfg);
  const int n_part = cfg.particles;
  if (static_cast<int>(x.size()) != n_part) {
    fail(ErrorKind::invalid_argument, "cutoff: expected " + std::to_string(n_part) + " positions");
  }
  for (const auto& p : x) {
    for (double c : p) {
      if (!std::isfinite(c)) fail(ErrorKind::invalid_argument, "cutoff: non-finite coordinate");
    }
  }
  const double c = coupling(cfg);
  const int k = cfg.k;

  CutoffValues out;
  out.theta.assign(n_part, 0.0);
  std::vector<double> hsum(n_part, 0.0);
  std::vector<Vec3> grad_e(n_part, Vec3::Zero());
  // Blocks of the Hessian of the exponent E, row-major (i, j).
  std::vector<Mat3> hess_e(static_cast<std::size_t>(n_part) * n_part, Mat3::Zero());
  auto block = [&](int i, int j) -> Mat3& { return hess_e[static_cast<std::size_t>(i) * n_part + j]; };

  double exponent = 0.0;
  for (int i = 0; i < n_part; ++i) {
    for (int j = i + 1; j < n_part; ++j) {
      const auto t = pair_terms(cfg.ell, diff(x[i], x[j]));
      hsum[i] += t.h;
      hsum[j] += t.h;
      const double w = c * pair_weight(i, j, k);
      if (w == 0.0) continue;
      exponent += w * t.h;
      grad_e[i] += w * t.grad;
      grad_e[j] -= w * t.grad;
      block(i, i) += w * t.hess;
      block(j, j) += w * t.hess;
      block(i, j) -= w * t.hess;
      block(j, i) -= w * t.hess;
    }
  }
  for (int i = 0; i < n_part; ++i) out.theta[i] = std::exp(-c * hsum[i]);

  out.exponent = exponent;
  out.Theta = std::exp(-exponent);
  out.grad.resize(n_part);
  out.hess_row_sums.assign(n_part, 0.0);
  for (int j = 0; j < n_part; ++j) {
    const Vec3 g = -out.Theta * grad_e[j];
    out.grad[j] = {g[0], g[1], g[2]};
    out.grad_sq_sum += g.squaredNorm();
  }
  // grad_i grad_j Theta = Theta (grad_i E grad_j E^T - grad_i grad_j E).
  for (int i = 0; i < n_part; ++i) {
    for (int j = 0; j < n_part; ++j) {
      const Mat3 b = out.Theta * (grad_e[i] * grad_e[j].transpose() - block(i, j));
      const double f = b.norm();
      out.hess_row_sums[i] += f;
      out.hess_sum += f;
    }
  }
  return out;
}

std::vector<Point3> sample_configuration(const CutoffConfig& cfg, std::uint64_t seed, std::uint64_t index) {
  validate(cfg);
  auto rng = sample_stream(seed, index);
  std::uniform_real_distribution<double> wide(-5.0 * cfg.ell, 5.0 * cfg.ell);
  std::uniform_real_distribution<double> tight(-0.5 * cfg.ell, 0.5 * cfg.ell);
  std::vector<Point3> x(cfg.particles);
  const int variant = static_cast<int>(index % 4);
  if (variant == 3) {
    // Satellite clusters: each marked particle anchors a cluster far from
    // the others, and every unmarked particle either stacks onto its
    // cluster's satellite point (a random direction, 0.5 to 2.5 ell out) or
    // sits out of range.
    std::uniform_real_distribution<double> radius(0.5 * cfg.ell, 2.5 * cfg.ell);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Point3> satellites(cfg.k);
    for (int c = 0; c < cfg.k; ++c) {
      x[c] = {40.0 * cfg.ell * c, 0.0, 0.0};
      Point3 dir{gauss(rng), gauss(rng), gauss(rng)};
      const double len = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
      const double r = radius(rng);
      for (int a = 0; a < 3; ++a) satellites[c][a] = x[c][a] + r * dir[a] / len;
    }
    std::uniform_int_distribution<int> attach(0, cfg.k);  // k: detached
    for (int i = cfg.k; i < cfg.particles; ++i) {
      const int c = attach(rng);
      x[i] = c < cfg.k ? satellites[c] : Point3{0.0, 1e3 * cfg.ell * (i + 1), 0.0};
    }
    return x;
  }
  for (int i = 0; i < cfg.particles; ++i) {
    const bool clustered = variant == 1 || (variant == 2 && i <= cfg.k);
    for (auto& coord : x[i]) coord = clustered ? tight(rng) : wide(rng);
  }
  return x;
}

namespace {

struct Ratios {
  double ii = 0.0;
  double iii = 0.0;
};

// Theta^(n-1) = exp(-E / 2) since the coupling halves, so both ratios are
// finite even where Theta itself underflows.
Ratios normalized_ratios(const CutoffConfig& cfg, std::span<const Point3> x) {
  const auto v = theta_eval(cfg, x);
  const double lower = std::exp(-0.5 * v.exponent) / (cfg.ell * cfg.ell);
  Ratios r;
  r.ii = v.Theta > 0.0 ? v.grad_sq_sum / v.Theta / lower : 0.0;
  r.iii = v.hess_sum / lower;
  return r;
}

// Compass search on all 3N coordinates, step halving from ell / 4 to 1e-4 ell,
// alternated with moves that drop one particle onto another; near-maximal
// configurations stack particles, which coordinate steps rarely reach.
double local_max(const CutoffConfig& cfg, std::vector<Point3> x, bool second) {
  auto value = [&](const std::vector<Point3>& y) {
    const auto r = normalized_ratios(cfg, y);
    return second ? r.iii : r.ii;
  };
  double best = value(x);
  for (int round = 0; round < 8; ++round) {
    for (double step = 0.25 * cfg.ell; step > 1e-4 * cfg.ell; step *= 0.5) {
      bool improved = true;
      for (int sweep = 0; improved && sweep < 50; ++sweep) {
        improved = false;
        for (auto& p : x) {
          for (auto& coord : p) {
            for (double dir : {1.0, -1.0}) {
              const double saved = coord;
              coord = saved + dir * step;
              const double trial = value(x);
              if (trial > best) {
                best = trial;
                improved = true;
                break;
              }
              coord = saved;
            }
          }
        }
      }
    }
    bool snapped = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = 0; j < x.size(); ++j) {
        if (i == j || x[i] == x[j]) continue;
        const Point3 saved = x[i];
        x[i] = x[j];
        const double trial = value(x);
        if (trial > best) {
          best = trial;
          snapped = true;
        } else {
          x[i] = saved;
        }
      }
    }
    if (!snapped) break;
  }
  return best;
}

struct Candidate {
  double value = 0.0;
  std::vector<Point3> x;
};

// Best ratios over configurations made of two stacked groups at distance d
// (optimized by scan + Brent) plus isolated particles, enumerating which
// marked particles sit where and how many unmarked ones join each group.
std::array<Candidate, 2> stacked_group_search(const CutoffConfig& cfg) {
  const int n_part = cfg.particles;
  const int k = cfg.k;
  std::array<Candidate, 2> best;
  int codes = 1;
  for (int i = 0; i < k; ++i) codes *= 3;
  std::vector<int> group(n_part);
  auto place = [&](double d) {
    std::vector<Point3> x(n_part);
    for (int i = 0; i < n_part; ++i) {
      if (group[i] == 0) x[i] = {0.0, 0.0, 0.0};
      else if (group[i] == 1) x[i] = {d, 0.0, 0.0};
      else x[i] = {0.0, 1e3 * cfg.ell * (i + 1), 0.0};  // out of range of everything
    }
    return x;
  };
  for (int code = 0; code < codes; ++code) {
    for (int ua = 0; ua <= n_part - k; ++ua) {
      for (int ub = 0; ua + ub <= n_part - k; ++ub) {
        int c = code;
        bool has_a = ua > 0, has_b = ub > 0;
        for (int i = 0; i < n_part; ++i) group[i] = 2;
        for (int i = 0; i < k; ++i, c /= 3) {
          group[i] = c % 3;
          has_a |= group[i] == 0;
          has_b |= group[i] == 1;
        }
        if (!has_a || !has_b) continue;
        for (int j = 0; j < ua; ++j) group[k + j] = 0;
        for (int j = 0; j < ub; ++j) group[k + ua + j] = 1;
        for (int which = 0; which < 2; ++which) {
          auto negative = [&](double d) {
            const auto r = normalized_ratios(cfg, place(d));
            return -(which == 0 ? r.ii : r.iii);
          };
          const double step = 0.1 * cfg.ell;
          double arg = step, val = 0.0;
          for (int q = 1; q <= 60; ++q) {
            const double v = -negative(q * step);
            if (v > val) {
              val = v;
              arg = q * step;
            }
          }
          const auto r = boost::math::tools::brent_find_minima(negative, std::max(1e-9, arg - step), arg + step, 30);
          if (-r.second > best[which].value) best[which] = {-r.second, place(r.first)};
        }
      }
    }
  }
  return best;
}

}  // namespace

CutoffInequalities theta_inequalities(const CutoffConfig& cfg, std::size_t samples, std::uint64_t seed,
                                      std::size_t refine) {
  validate(cfg);
  if (samples < 100) fail(ErrorKind::invalid_argument, "theta inequalities need at least 100 samples");
  const double c = coupling(cfg);
  CutoffInequalities out;
  out.samples = samples;
  std::vector<std::pair<double, std::size_t>> by_ii, by_iii;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto x = sample_configuration(cfg, seed, s);
    // Exponents accumulated particle by particle, so E_{k+1} = E_k + (nonnegative).
    double base = 0.0;  // sum_{i <= k} sum_{j != i} h
    double prev_theta = 1.0;
    bool ok = true;
    for (int kk = 0; kk < cfg.particles; ++kk) {
      double row = 0.0;
      for (int j = 0; j < cfg.particles; ++j) {
        if (j != kk) row += cutoff_h(cfg.ell, {x[kk][0] - x[j][0], x[kk][1] - x[j][1], x[kk][2] - x[j][2]});
      }
      base += row;
      const double theta_n = std::exp(-c * base);
      const double theta_n1 = std::exp(-2.0 * c * base);
      if (!(theta_n <= prev_theta) || !(theta_n <= 1.0) || !(theta_n1 <= theta_n)) ok = false;
      prev_theta = theta_n;
    }
    if (!ok) {
      out.monotonicity_ok = false;
      ++out.monotonicity_violations;
    }
    const auto r = normalized_ratios(cfg, x);
    out.sampled_ratio_ii_sup = std::max(out.sampled_ratio_ii_sup, r.ii);
    out.sampled_ratio_iii_sup = std::max(out.sampled_ratio_iii_sup, r.iii);
    by_ii.emplace_back(-r.ii, s);
    by_iii.emplace_back(-r.iii, s);
  }
  const auto structured = stacked_group_search(cfg);
  out.structured_ratio_ii_sup = structured[0].value;
  out.structured_ratio_iii_sup = structured[1].value;
  out.ratio_ii_sup = std::max(out.sampled_ratio_ii_sup, local_max(cfg, structured[0].x, false));
  out.ratio_iii_sup = std::max(out.sampled_ratio_iii_sup, local_max(cfg, structured[1].x, true));
  refine = std::min(refine, samples);
  std::partial_sort(by_ii.begin(), by_ii.begin() + refine, by_ii.end());
  std::partial_sort(by_iii.begin(), by_iii.begin() + refine, by_iii.end());
  for (std::size_t i = 0; i < refine; ++i) {
    out.ratio_ii_sup = std::max(out.ratio_ii_sup, local_max(cfg, sample_configuration(cfg, seed, by_ii[i].second), false));
    out.ratio_iii_sup = std::max(out.ratio_iii_sup, local_max(cfg, sample_configuration(cfg, seed, by_iii[i].second), true));
  }
  return out;
}

double single_pair_ratio_ii(const CutoffConfig& cfg, double distance) {
  validate(cfg);
  const double c = coupling(cfg);
  const double rho = std::sqrt(distance * distance + cfg.ell * cfg.ell);
  const double h = std::exp(-rho / cfg.ell);
  const double s = distance / rho;
  return 2.0 * c * c * h * h * s * s * std::exp(-0.5 * c * h);
}

}  // namespace condensate
