#pragma once

#include <filesystem>
#include <limits>
#include <memory>
#include <vector>

namespace condensate {

enum class PotentialFamily { zero, soft_sphere, gaussian, tabulated };

const char* to_string(PotentialFamily family);

struct PotentialNorms {
  double l1 = 0.0;                 // int V d^3x
  double l2 = 0.0;                 // (int V^2 d^3x)^{1/2}
  double l3half = 0.0;             // (int V^{3/2} d^3x)^{2/3}
  double first_moment = 0.0;       // int |x| V d^3x
  double second_moment_sup = 0.0;  // sup |x|^2 V
  double hardy_integral = 0.0;     // int V / |x| d^3x
  double rho = 0.0;                // second_moment_sup + hardy_integral
};

// Non-negative radial interaction. A Potential carries an integer scale N
// (1 for a base potential); its value is N^2 * base(N r).
class Potential {
 public:
  static Potential zero();
  static Potential soft_sphere(double v0, double radius);
  static Potential gaussian(double v0, double width);
  // Samples at ascending radii, interpolated by a monotone cubic (PCHIP)
  // clamped at zero. Beyond the last sample the potential either vanishes
  // (tail_exponent = +inf) or decays like (r_last / r)^tail_exponent.
  static Potential tabulated(std::vector<double> r, std::vector<double> v,
                             double tail_exponent = std::numeric_limits<double>::infinity());
  // Two-column text file "r, V(r)"; lines that do not start with a number are skipped.
  static Potential tabulated_csv(const std::filesystem::path& path,
                                 double tail_exponent = std::numeric_limits<double>::infinity());

  double operator()(double r) const;

  PotentialFamily family() const noexcept { return family_; }
  int scale() const noexcept { return scale_; }
  Potential base() const;

  // Family parameters, unscaled. amplitude is V0 (or the largest sample).
  double amplitude() const noexcept { return amplitude_; }
  double length() const noexcept { return length_; }
  const std::vector<double>& table_r() const;
  const std::vector<double>& table_v() const;

  // Decay exponent sigma in V <= C <r>^{-sigma}; +inf for compact or Gaussian.
  double sigma() const noexcept { return sigma_; }
  bool is_zero() const noexcept;

  // Scaled quantities (they include the 1/N length and N^2 energy factors).
  double range() const;           // characteristic length of the interaction
  double support_radius() const;  // V is below 1e-16 * sup V beyond this; +inf for power tails
  double max_value() const;       // sup V
  std::vector<double> breakpoints() const;  // radii where V or V' jumps
  // One-sided values V(r-) and V(r+), robust to rounding of r at a breakpoint.
  double left_limit(double r) const;
  double right_limit(double r) const;

 private:
  friend Potential scale(const Potential& p, int n);
  Potential() = default;
  double base_value(double r) const;

  PotentialFamily family_ = PotentialFamily::zero;
  int scale_ = 1;
  double amplitude_ = 0.0;
  double length_ = 0.0;
  double sigma_ = std::numeric_limits<double>::infinity();
  struct Table;
  std::shared_ptr<const Table> table_;
};

using ScaledPotential = Potential;

// Returns p rescaled to N^2 p(N r). Composes multiplicatively with an existing scale.
Potential scale(const Potential& p, int n);

PotentialNorms norms(const Potential& p);

// Ascending radii 0 = e_0 < ... < e_m = end splitting [0, end] into pieces on
// which V is smooth: the breakpoints and, for tables, every sample radius.
// Piecewise quadrature over these edges avoids chasing the kinks of the
// interpolant adaptively. end may be +inf.
std::vector<double> quadrature_edges(const Potential& p, double end);

}  // namespace condensate
