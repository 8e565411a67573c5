#include <gtest/gtest.h>

#include <cmath>

#include "condensate/pair_bounds.hpp"
#include "support.hpp"

using namespace condensate;
using condensate::testing::error_kind;
using condensate::testing::for_all;
using condensate::testing::Gen;

namespace {

GaussianPairState coincident(double width) {
  GaussianPairState s;
  s.first.width = width;
  s.second.width = width;
  return s;
}

GaussianOrbital random_orbital(Gen& g) {
  GaussianOrbital o;
  for (int a = 0; a < 3; ++a) {
    o.center[a] = g.uniform(-1.5, 1.5);
    o.momentum[a] = g.uniform(-1.5, 1.5);
  }
  o.width = g.uniform(0.5, 2.0);
  return o;
}

GaussianPairState random_pair(Gen& g) { return {random_orbital(g), random_orbital(g)}; }

// int V = 1.
Potential unit_gaussian() { return Potential::gaussian(std::pow(M_PI, -1.5), 1.0); }

}  // namespace

TEST(PairMatrixElement, CoincidentGaussiansClosedForm) {
  // The separation of two independent width-s orbitals has density
  // (2 pi s^2)^{-3/2} exp(-r^2 / 2 s^2); pairing with v0 exp(-r^2 / w^2).
  for (double s : {0.3, 0.5, 1.0, 2.0}) {
    for (double w : {0.5, 1.0}) {
      const double v0 = 1.7;
      const auto st = coincident(s);
      const double expected = v0 * std::pow(2.0 * M_PI * s * s, -1.5) * std::pow(M_PI / (1.0 / (w * w) + 0.5 / (s * s)), 1.5);
      const auto got = pair_matrix_element(Potential::gaussian(v0, w), st, st);
      EXPECT_NEAR(got.real(), expected, 1e-9 * expected) << "s = " << s << " w = " << w;
      EXPECT_NEAR(got.imag(), 0.0, 1e-12);
    }
  }
}

TEST(PairMatrixElement, ContactClosedForm) {
  for (double s : {0.5, 1.0, 2.0}) {
    const auto st = coincident(s);
    const double expected = std::pow(2.0 * M_PI * s * s, -1.5);
    EXPECT_NEAR(contact_matrix_element(st, st).real(), expected, 1e-12 * expected);
  }
}

TEST(PairMatrixElement, ZeroPotentialGivesZero) {
  const auto [phi, psi] = reference_pair_states();
  EXPECT_EQ(std::abs(pair_matrix_element(Potential::zero(), phi, psi)), 0.0);
  const auto r = pair_interaction_bound(Potential::zero(), 20, 1);
  EXPECT_EQ(r.ratio_sup, 0.0);
}

TEST(PairMatrixElement, Hermitian) {
  const auto v = Potential::soft_sphere(2.0, 1.0);
  for_all(8, 3, [&](Gen& g) {
    const auto phi = random_pair(g);
    const auto psi = random_pair(g);
    const auto a = pair_matrix_element(v, phi, psi);
    const auto b = pair_matrix_element(v, psi, phi);
    EXPECT_NEAR(std::abs(a - std::conj(b)), 0.0, 1e-10 * (std::abs(a) + 1e-12));
  });
}

TEST(PairMatrixElement, TranslationAndBoostInvariance) {
  const auto v = Potential::gaussian(1.0, 0.8);
  for_all(8, 5, [&](Gen& g) {
    auto phi = random_pair(g);
    auto psi = random_pair(g);
    const auto base = pair_matrix_element(v, phi, psi);
    const double shift[3] = {g.uniform(-2, 2), g.uniform(-2, 2), g.uniform(-2, 2)};
    const double boost[3] = {g.uniform(-2, 2), g.uniform(-2, 2), g.uniform(-2, 2)};
    auto moved = [&](GaussianPairState s, bool translate) {
      for (GaussianOrbital* o : {&s.first, &s.second}) {
        for (int a = 0; a < 3; ++a) (translate ? o->center[a] : o->momentum[a]) += translate ? shift[a] : boost[a];
      }
      return s;
    };
    const double scale = std::abs(base) + 1e-12;
    EXPECT_NEAR(std::abs(pair_matrix_element(v, moved(phi, true), moved(psi, true))), std::abs(base), 1e-9 * scale);
    EXPECT_NEAR(std::abs(pair_matrix_element(v, moved(phi, false), moved(psi, false)) - base), 0.0, 1e-9 * scale);
  });
}

TEST(PairBound, RatioBelowConstantOnRandomPairs) {
  const double c = pair_bound_constant();
  EXPECT_NEAR(c, 1.0 / (8.0 * M_PI), 1e-6 / (8.0 * M_PI));
  for (const auto& v : {Potential::soft_sphere(2.0, 1.0), Potential::gaussian(1.0, 1.0)}) {
    const double l1 = norms(v).l1;
    for_all(20, 11, [&](Gen& g) {
      const auto phi = random_pair(g);
      const auto psi = random_pair(g);
      const double ratio = std::abs(pair_matrix_element(v, phi, psi)) / (l1 * std::sqrt(two_body_form(phi) * two_body_form(psi)));
      EXPECT_LE(ratio, c);
    });
  }
}

TEST(PairBound, SupIndependentOfSeedAndSampleCount) {
  const auto v = Potential::soft_sphere(2.0, 1.0);
  const auto a = pair_interaction_bound(v, 100, 1);
  const auto b = pair_interaction_bound(v, 200, 1);
  const auto c = pair_interaction_bound(v, 100, 7);
  EXPECT_LE(std::abs(b.ratio_sup - a.ratio_sup), 0.1 * a.ratio_sup);
  EXPECT_LE(std::abs(c.ratio_sup - a.ratio_sup), 0.1 * a.ratio_sup);
  EXPECT_LE(a.ratio_sup, a.constant);
  EXPECT_GE(a.ratio_sup, a.sampled_ratio_sup);
  EXPECT_GE(a.ratio_sup, a.structured_ratio_sup);
  EXPECT_EQ(a.ratios.size(), 100u);
}

TEST(PairBound, SamplingIsReproducible) {
  const PairSampling ranges;
  const auto a = sample_pair_state(9, 4, ranges);
  const auto b = sample_pair_state(9, 4, ranges);
  EXPECT_EQ(a.first.center, b.first.center);
  EXPECT_EQ(a.second.momentum, b.second.momentum);
  EXPECT_EQ(a.second.width, b.second.width);
  EXPECT_NE(sample_pair_state(9, 5, ranges).first.center, a.first.center);
}

TEST(PairBound, RejectsEmptySamplingBox) {
  PairSampling bad;
  bad.width_min = 2.0;
  bad.width_max = 1.0;
  EXPECT_EQ(error_kind([&] { (void)pair_interaction_bound(Potential::gaussian(1.0, 1.0), 10, 1, bad); }),
            ErrorKind::invalid_argument);
}

TEST(ContactLimit, GapShrinksUnderTheEnvelope) {
  const auto [phi, psi] = reference_pair_states();
  const std::vector<double> alphas{1.0, 0.5, 0.25, 0.1, 0.05, 0.01, 1e-3};
  const auto r = contact_limit_gap(unit_gaussian(), phi, psi, alphas);
  EXPECT_TRUE(r.nonincreasing);
  EXPECT_TRUE(r.below_envelope);
  EXPECT_LE(r.gaps.back(), 1e-6);
  for (std::size_t i = 1; i < r.gaps.size(); ++i) EXPECT_LE(r.gaps[i], r.gaps[i - 1]);
}

TEST(ContactLimit, ScaledPairingApproachesContact) {
  const auto st = coincident(1.0);
  const auto v = unit_gaussian();
  const auto contact = contact_matrix_element(st, st);
  EXPECT_NEAR(std::abs(pair_matrix_element(v, 1e-3, st, st) - contact), 0.0, 1e-6 * std::abs(contact));
}

TEST(ContactLimit, RejectsUnnormalizedPotential) {
  const auto [phi, psi] = reference_pair_states();
  EXPECT_EQ(error_kind([&] { (void)contact_limit_gap(Potential::gaussian(1.0, 1.0), phi, psi, {1.0, 0.1}); }),
            ErrorKind::unnormalized);
}
