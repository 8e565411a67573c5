#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace condensate {

enum class ErrorKind {
  invalid_argument,
  divergent_norm,
  repulsivity_violated,
  invalid_scale,
  asymptotic_regime,
  resonance,
  insufficient_resolution,
  boundary_contamination,
  step_size,
  grid_mismatch,
  spectral_blowup,
  no_minimizer,
  rank_one_required,
  coarse_sampling,
  unnormalized,
  quadrature,
  config,
  io,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it to a stable message without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace condensate
