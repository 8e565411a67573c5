#pragma once

#include <array>

namespace condensate {

enum class KernelKind {
  two_body_form,       // 1 / ((q.(p-q))^2 + q^2 + (p-q)^2 + 1)
  half_power_resolvent // (|q|^{1/2} + 1) / ((1 + q^2)(1 + (q-p)^2))
};

// int d^3q of the kernel. The integrand depends on |p| and the angle
// between q and p only, so this is a nested adaptive radial x polar-angle
// quadrature (relative error target 1e-8, checked at 1e-5).
double kernel_integral(KernelKind kind, const std::array<double, 3>& p);

// Closed-form values at p = 0: pi^2 and pi^2 + (3/2) sqrt(2) pi^2.
double kernel_integral_at_origin(KernelKind kind);

}  // namespace condensate
