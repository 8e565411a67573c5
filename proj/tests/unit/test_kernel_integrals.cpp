#include <gtest/gtest.h>

#include <cmath>

#include "condensate/kernel_integrals.hpp"
#include "support.hpp"

using namespace condensate;
using condensate::testing::for_all;
using condensate::testing::Gen;

namespace {
const double pi2 = M_PI * M_PI;
}

TEST(KernelIntegral, TwoBodyFormAtOrigin) {
  EXPECT_NEAR(kernel_integral(KernelKind::two_body_form, {0, 0, 0}), pi2, 1e-4 * pi2);
  EXPECT_DOUBLE_EQ(kernel_integral_at_origin(KernelKind::two_body_form), pi2);
}

TEST(KernelIntegral, HalfPowerResolventAtOrigin) {
  const double expected = pi2 + 1.5 * std::sqrt(2.0) * pi2;
  EXPECT_NEAR(kernel_integral_at_origin(KernelKind::half_power_resolvent), expected, 1e-12);
  EXPECT_NEAR(kernel_integral(KernelKind::half_power_resolvent, {0, 0, 0}), expected, 1e-4 * expected);
}

// Shifting q by p/2 turns the two-body denominator into a function of |u|
// alone whose radial integral is pi^2 for every p.
TEST(KernelIntegral, TwoBodyFormIsConstantInP) {
  for (double r : {0.5, 2.0, 10.0, 50.0}) {
    EXPECT_NEAR(kernel_integral(KernelKind::two_body_form, {r, 0, 0}), pi2, 1e-5 * pi2) << "|p| = " << r;
  }
}

TEST(KernelIntegral, DependsOnlyOnTheNormOfP) {
  for (KernelKind kind : {KernelKind::two_body_form, KernelKind::half_power_resolvent}) {
    for_all(6, 17, [&](Gen& g) {
      const double r = g.uniform(0.1, 20.0);
      const double ct = g.uniform(-1.0, 1.0);
      const double ph = g.uniform(0.0, 2.0 * M_PI);
      const double st = std::sqrt(1.0 - ct * ct);
      const double a = kernel_integral(kind, {r * st * std::cos(ph), r * st * std::sin(ph), r * ct});
      const double b = kernel_integral(kind, {0, 0, r});
      EXPECT_NEAR(a, b, 1e-6 * b);
    });
  }
}

TEST(KernelIntegral, SupAttainedAtOrigin) {
  for (KernelKind kind : {KernelKind::two_body_form, KernelKind::half_power_resolvent}) {
    const double origin = kernel_integral(kind, {0, 0, 0});
    for (double r = 0.0; r <= 50.0; r += 2.5) {
      EXPECT_LE(kernel_integral(kind, {0, 0, r}), origin * (1.0 + 1e-5)) << "|p| = " << r;
    }
  }
}

TEST(KernelIntegral, HalfPowerResolventDecaysAtLargeMomentum) {
  const double origin = kernel_integral(KernelKind::half_power_resolvent, {0, 0, 0});
  double last = origin;
  for (double r : {5.0, 20.0, 50.0}) {
    const double v = kernel_integral(KernelKind::half_power_resolvent, {0, 0, r});
    EXPECT_LT(v, last) << "|p| = " << r;
    last = v;
  }
}
