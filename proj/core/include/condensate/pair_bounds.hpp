#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "condensate/potentials.hpp"

namespace condensate {

// (pi w^2)^{-3/4} exp(-|x - c|^2 / (2 w^2) + i k.x), unit norm in L^2(R^3).
struct GaussianOrbital {
  std::array<double, 3> center{};
  std::array<double, 3> momentum{};
  double width = 1.0;
};

// Product state phi(x1, x2) = first(x1) second(x2).
struct GaussianPairState {
  GaussianOrbital first;
  GaussianOrbital second;
};

// <phi, V(x1 - x2) psi>, reduced to a radial integral in the separation.
std::complex<double> pair_matrix_element(const Potential& v, const GaussianPairState& phi,
                                         const GaussianPairState& psi);

// Same pairing with V_alpha(x) = alpha^{-3} V(x / alpha).
std::complex<double> pair_matrix_element(const Potential& v, double alpha, const GaussianPairState& phi,
                                         const GaussianPairState& psi);

// <phi, delta(x1 - x2) psi> = int conj(phi(x, x)) psi(x, x) dx.
std::complex<double> contact_matrix_element(const GaussianPairState& phi, const GaussianPairState& psi);

// <psi, ((grad1 . grad2)^2 - Lap1 - Lap2 + 1) psi>, closed form.
double two_body_form(const GaussianPairState& psi);

// <psi, ((grad1 - grad2)^4 + (grad1 + grad2)^2 + 1) psi>, closed form.
double relative_form(const GaussianPairState& psi);

// sup_p of the two-body kernel integral over (2 pi)^3: the constant C in
// |<phi, V psi>| <= C ||V||_1 form(phi)^{1/2} form(psi)^{1/2}.
double pair_bound_constant();

struct PairSampling {
  double center_range = 1.5;  // centers uniform in [-c, c]^3
  double width_min = 0.5;
  double width_max = 2.0;
  double momentum_range = 1.5;  // momenta uniform in [-m, m]^3
};

// A fixed, well-overlapping pair of unit-width product states with small
// offsets and momenta: (phi, psi).
std::pair<GaussianPairState, GaussianPairState> reference_pair_states();

GaussianPairState sample_pair_state(std::uint64_t seed, std::uint64_t index, const PairSampling& ranges);

struct PairBoundResult {
  std::vector<double> ratios;  // |<phi, V psi>| / (||V||_1 sqrt(form(phi) form(psi))) per sample
  double ratio_sup = 0.0;             // best of the samples, the structured candidate and the ascents
  double sampled_ratio_sup = 0.0;     // raw samples only
  double structured_ratio_sup = 0.0;  // identical coincident orbitals at rest, width scanned
  double constant = 0.0;              // pair_bound_constant()
};

// Draws `samples` independent (phi, psi) pairs; sample i uses streams 2i and
// 2i + 1. The raw maximum of the ratio is heavy tailed, so the reported sup
// also includes a coordinate ascent (inside the sampling box) started from
// the structured candidate and from the `refine` best samples.
PairBoundResult pair_interaction_bound(const Potential& v, std::size_t samples, std::uint64_t seed,
                                       const PairSampling& ranges = {}, std::size_t refine = 4);

struct ContactGapResult {
  std::vector<double> alphas;
  std::vector<double> gaps;             // |<phi, (V_alpha - delta) psi>|
  std::vector<double> normalized_gaps;  // gap / sqrt(two_body_form(psi) relative_form(phi))
  double envelope_exponent = 1.0 / 12.0;
  double fitted_constant = 0.0;  // normalized gap / alpha^exponent at the largest alpha
  bool nonincreasing = false;
  bool below_envelope = false;
};

// V must satisfy int V = 1 (ErrorKind::unnormalized otherwise). Alphas are
// taken in the given order, largest first.
ContactGapResult contact_limit_gap(const Potential& v, const GaussianPairState& phi, const GaussianPairState& psi,
                                   const std::vector<double>& alphas, double envelope_exponent = 1.0 / 12.0);

}  // namespace condensate
