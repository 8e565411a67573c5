#include "condensate/hierarchy.hpp"

#include <cmath>
#include <string>

#include "condensate/error.hpp"

namespace condensate {

namespace {

Eigen::Map<const Eigen::VectorXcd> as_vector(const std::vector<cplx>& v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

Field layout_of(const Field& f) {
  Field out(f.shape(), f.box_length());
  out.time = f.time;
  return out;
}

bool same_layout(const Field& a, const Field& b) {
  return a.shape() == b.shape() && a.box_length() == b.box_length();
}

// Spectral helpers on one layout.
class Spectral {
 public:
  explicit Spectral(const Field& layout) : plan_(layout.shape()), k2_(layout.size(), 0.0) {
    std::vector<std::vector<double>> ks;
    for (int a = 0; a < layout.dim(); ++a) ks.push_back(layout.wavenumbers(a));
    for (std::size_t i = 0; i < layout.size(); ++i) {
      std::size_t rest = i;
      for (int a = layout.dim() - 1; a >= 0; --a) {
        const auto m = static_cast<std::size_t>(layout.shape()[static_cast<std::size_t>(a)]);
        const double k = ks[static_cast<std::size_t>(a)][rest % m];
        k2_[i] += k * k;
        rest /= m;
      }
    }
  }

  std::vector<cplx> minus_laplacian(std::vector<cplx> v) const {
    plan_.forward(v);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= k2_[i];
    plan_.inverse(v);
    return v;
  }

  // e^{i Delta tau} v
  std::vector<cplx> free_evolve(std::vector<cplx> v, double tau) const {
    plan_.forward(v);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= std::polar(1.0, -k2_[i] * tau);
    plan_.inverse(v);
    return v;
  }

 private:
  FftPlan plan_;
  std::vector<double> k2_;
};

std::vector<cplx> cubic_term(const std::vector<cplx>& phi) {
  std::vector<cplx> a(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) a[i] = std::norm(phi[i]) * phi[i];
  return a;
}

// x y^dagger
Eigen::MatrixXcd outer(const std::vector<cplx>& x, const std::vector<cplx>& y) {
  return as_vector(x) * as_vector(y).adjoint();
}

void check_trajectory(const Trajectory& traj, std::size_t min_frames) {
  if (traj.frames.size() < min_frames) {
    fail(ErrorKind::invalid_argument, "trajectory needs at least " + std::to_string(min_frames) + " frames");
  }
  if (!(traj.dt > 0.0)) fail(ErrorKind::invalid_argument, "trajectory spacing must be > 0");
  for (const auto& f : traj.frames) {
    if (!same_layout(f, traj.frames.front())) fail(ErrorKind::grid_mismatch, "trajectory frames use different grids");
  }
}

}  // namespace

MarginalKernel::MarginalKernel(const Field& layout, Eigen::MatrixXcd kernel, std::optional<std::vector<cplx>> witness)
    : layout_(layout_of(layout)), kernel_(std::move(kernel)), witness_(std::move(witness)) {
  const auto n = static_cast<Eigen::Index>(layout.size());
  if (kernel_.rows() != n || kernel_.cols() != n) fail(ErrorKind::grid_mismatch, "kernel size does not match layout");
}

double MarginalKernel::trace() const { return kernel_.trace().real() * layout_.cell_volume(); }

double MarginalKernel::hs_norm() const { return kernel_.norm() * layout_.cell_volume(); }

double MarginalKernel::hermiticity_defect() const { return (kernel_ - kernel_.adjoint()).cwiseAbs().maxCoeff(); }

double MarginalKernel::min_eigenvalue() const {
  const Eigen::MatrixXcd h = 0.5 * (kernel_ + kernel_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() * layout_.cell_volume();
}

MarginalKernel factorized_marginal(const Field& phi) {
  const double m = phi.mass();
  if (std::abs(m - 1.0) > 1e-8) fail(ErrorKind::unnormalized, "||phi||^2 = " + std::to_string(m) + ", expected 1");
  return MarginalKernel(phi, outer(phi.values(), phi.values()), phi.values());
}

Eigen::MatrixXcd delta_trace_term(const MarginalKernel& gamma) {
  if (!gamma.witness()) fail(ErrorKind::rank_one_required, "the delta trace term is only evaluated for factorized marginals");
  const auto& phi = *gamma.witness();
  const auto a = cubic_term(phi);
  return outer(a, phi) - outer(phi, a);
}

Eigen::MatrixXcd delta_trace_term(const Field& phi) {
  const auto a = cubic_term(phi.values());
  return outer(a, phi.values()) - outer(phi.values(), a);
}

Trajectory gp_trajectory(Field init, const GPConfig& config, double t_end, std::size_t stride) {
  if (stride == 0) fail(ErrorKind::invalid_argument, "stride must be >= 1");
  const GPSolver solver(init, config);
  const auto steps = static_cast<std::size_t>(std::llround(t_end / config.dt));
  Trajectory traj;
  traj.dt = config.dt * static_cast<double>(stride);
  traj.frames.push_back(init);
  for (std::size_t s = 1; s <= steps; ++s) {
    solver.step(init);
    if (s % stride == 0) traj.frames.push_back(init);
  }
  return traj;
}

HierarchyResidual hierarchy_residual(const Trajectory& traj, double coupling) {
  check_trajectory(traj, 3);
  const Field& layout = traj.frames.front();
  const Spectral sp(layout);
  const double dv = layout.cell_volume();
  HierarchyResidual out;
  for (std::size_t n = 1; n + 1 < traj.frames.size(); ++n) {
    const auto& prev = traj.frames[n - 1].values();
    const auto& cur = traj.frames[n].values();
    const auto& next = traj.frames[n + 1].values();
    const auto lap = sp.minus_laplacian(cur);
    const auto a = cubic_term(cur);
    const cplx c{0.0, 1.0 / (2.0 * traj.dt)};
    const Eigen::MatrixXcd r = c * (outer(next, next) - outer(prev, prev)) - (outer(lap, cur) - outer(cur, lap)) -
                               coupling * (outer(a, cur) - outer(cur, a));
    const double norm = r.norm() * dv;
    out.times.push_back(traj.frames[n].time);
    out.differential_residual.push_back(norm);
    out.max_differential = std::max(out.max_differential, norm);
  }
  return out;
}

HierarchyResidual integral_form_residual(const Trajectory& traj, double coupling, std::size_t last) {
  check_trajectory(traj, 1);
  if (last == 0) last = traj.frames.size() - 1;
  if (last >= traj.frames.size()) fail(ErrorKind::invalid_argument, "final frame index out of range");
  const Field& layout = traj.frames.front();
  const Spectral sp(layout);
  const double dv = layout.cell_volume();
  const double t = static_cast<double>(last) * traj.dt;
  HierarchyResidual out;
  out.times.push_back(traj.frames[last].time);
  const Eigen::MatrixXcd gamma_t = outer(traj.frames[last].values(), traj.frames[last].values());
  if (last == 0) return out;

  // Trapezoid sums on the full sample set and on every other sample.
  const std::size_t even_last = last - (last % 2);
  const auto n = static_cast<Eigen::Index>(layout.size());
  Eigen::MatrixXcd fine = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd fine_even = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd coarse = Eigen::MatrixXcd::Zero(n, n);
  if (coupling != 0.0) {
    for (std::size_t j = 0; j <= last; ++j) {
      const double tau = t - static_cast<double>(j) * traj.dt;
      const auto& phi = traj.frames[j].values();
      const auto big_a = sp.free_evolve(cubic_term(phi), tau);
      const auto big_phi = sp.free_evolve(phi, tau);
      const Eigen::MatrixXcd term = outer(big_a, big_phi) - outer(big_phi, big_a);
      const double w = (j == 0 || j == last) ? 0.5 : 1.0;
      fine += w * traj.dt * term;
      if (j <= even_last && even_last >= 2) {
        const double we = (j == 0 || j == even_last) ? 0.5 : 1.0;
        fine_even += we * traj.dt * term;
        if (j % 2 == 0) {
          const double wc = (j == 0 || j == even_last) ? 0.5 : 1.0;
          coarse += wc * 2.0 * traj.dt * term;
        }
      }
    }
  }
  const auto phi0 = sp.free_evolve(traj.frames.front().values(), t);
  const Eigen::MatrixXcd rebuilt = outer(phi0, phi0) - cplx{0.0, coupling} * fine;
  out.integral_residual = (gamma_t - rebuilt).norm() * dv;
  if (coupling != 0.0 && even_last >= 2) {
    out.quadrature_error = std::abs(coupling) * (fine_even - coarse).norm() * dv / 3.0;
    const double scale = gamma_t.norm() * dv;
    if (out.quadrature_error > 1e-2 * scale) {
      fail(ErrorKind::coarse_sampling, "estimated s-quadrature error " + std::to_string(out.quadrature_error) +
                                           " exceeds 1e-2 of ||gamma_t||; refine trajectory sampling");
    }
  }
  return out;
}

}  // namespace condensate
