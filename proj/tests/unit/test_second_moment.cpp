#include <gtest/gtest.h>

#include <cmath>

#include "condensate/potentials.hpp"
#include "condensate/second_moment.hpp"
#include "support.hpp"

using namespace condensate;
using condensate::testing::error_kind;
using condensate::testing::for_all;
using condensate::testing::Gen;

namespace {

SeparableState state(double g_width) {
  SeparableState s;
  s.chi[0] = {1.0, 0.2, 0.3};
  s.chi[1] = {0.9, -0.1, 0.0};
  s.chi[2] = {1.2, 0.0, -0.4};
  s.g_width = g_width;
  return s;
}

}  // namespace

TEST(SecondMoment, FreeSlackIsTheDroppedCrossTerms) {
  const auto t = second_moment_transform(Potential::zero(), 0.5, 1e-6);
  const auto r = second_moment_check(state(1.0), t);
  EXPECT_GE(r.slack, 0.0);
  EXPECT_NEAR(r.slack, r.dropped_terms, 1e-6 * std::abs(r.lhs));
  EXPECT_NEAR(r.h1, r.k2, 1e-6 * r.k2);
  EXPECT_NEAR(r.h2, r.k4, 1e-6 * r.k4);
}

TEST(SecondMoment, SoftSphereSlackNonnegative) {
  const auto t = second_moment_transform(Potential::soft_sphere(2.0, 1.0), 0.5, 1e-3);
  const auto r = second_moment_check(state(1.0), t);
  EXPECT_GE(r.slack, -1e-6 * std::abs(r.lhs));
  EXPECT_GT(r.lhs, r.rhs);
}

TEST(SecondMoment, BroadeningDecreasesBothSides) {
  const auto t = second_moment_transform(Potential::soft_sphere(2.0, 1.0), 0.5, 1e-3);
  const auto narrow = second_moment_check(state(0.8), t);
  const auto wide = second_moment_check(state(1.6), t);
  EXPECT_LT(wide.lhs, narrow.lhs);
  EXPECT_LT(wide.rhs, narrow.rhs);
  EXPECT_GE(wide.slack, -1e-6 * std::abs(wide.lhs));
}

TEST(SecondMoment, RequiresTheTwoParticleScale) {
  TransformSpec spec;
  spec.k_max = 24.0;
  spec.completeness_tol = 1e-2;
  const auto t = build_transform(scale(Potential::gaussian(1.0, 1.0), 3), spec);
  EXPECT_EQ(error_kind([&] { (void)second_moment_check(state(1.0), t); }), ErrorKind::invalid_argument);
}

TEST(SecondMoment, RejectsIncompleteTransform) {
  EXPECT_EQ(error_kind([] { (void)second_moment_transform(Potential::soft_sphere(2.0, 1.0), 0.5, 1e-9); }),
            ErrorKind::insufficient_resolution);
}

TEST(SecondMoment, RejectsDegenerateWidths) {
  const auto t = second_moment_transform(Potential::gaussian(1.0, 1.0), 0.5, 1e-3);
  EXPECT_EQ(error_kind([&] { (void)second_moment_check(state(0.0), t); }), ErrorKind::invalid_argument);
  auto s = state(1.0);
  s.chi[1].width = -1.0;
  EXPECT_EQ(error_kind([&] { (void)second_moment_check(s, t); }), ErrorKind::invalid_argument);
}

TEST(SecondMomentProperty, SlackOverRandomSeparableStates) {
  for (const auto& v : {Potential::soft_sphere(2.0, 1.0), Potential::gaussian(1.0, 1.0)}) {
    const auto t = second_moment_transform(v, 0.5, 1e-3);
    for_all(12, 41, [&](Gen& gen) {
      SeparableState s;
      for (auto& c : s.chi) c = {gen.uniform(0.5, 1.5), gen.uniform(-1.0, 1.0), gen.uniform(-1.0, 1.0)};
      s.g_width = gen.uniform(0.5, 1.5);
      const auto r = second_moment_check(s, t);
      EXPECT_GE(r.slack, -1e-6 * std::abs(r.lhs));
      EXPECT_LE(r.intertwining_gap, 0.05);
    });
  }
}
