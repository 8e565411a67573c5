#pragma once

#include <gtest/gtest.h>

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "condensate/error.hpp"

namespace condensate::testing {

// Kind of the condensate::Error thrown by f, or nullopt if it returns normally.
template <class F>
std::optional<ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

// Small deterministic generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
};

// Runs body on `cases` generated inputs; failures name the case and its seed.
template <class Body>
void for_all(int cases, std::uint64_t seed, Body&& body) {
  for (int i = 0; i < cases; ++i) {
    const std::uint64_t case_seed = seed * 1000003u + static_cast<std::uint64_t>(i);
    SCOPED_TRACE("property case " + std::to_string(i) + " (seed " + std::to_string(case_seed) + ")");
    Gen gen(case_seed);
    body(gen);
    if (::testing::Test::HasFatalFailure()) return;
  }
}

}  // namespace condensate::testing
