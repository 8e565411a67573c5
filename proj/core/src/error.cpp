#include "condensate/error.hpp"

namespace condensate {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::divergent_norm: return "divergent norm";
    case ErrorKind::repulsivity_violated: return "repulsivity violated";
    case ErrorKind::invalid_scale: return "invalid scale";
    case ErrorKind::asymptotic_regime: return "asymptotic regime not reached (increase R_max)";
    case ErrorKind::resonance: return "near-singular normalization (resonance suspected)";
    case ErrorKind::insufficient_resolution: return "insufficient k resolution";
    case ErrorKind::boundary_contamination: return "boundary contamination";
    case ErrorKind::step_size: return "step size";
    case ErrorKind::grid_mismatch: return "grid mismatch";
    case ErrorKind::spectral_blowup: return "spectral blow-up";
    case ErrorKind::no_minimizer: return "no minimizer";
    case ErrorKind::rank_one_required: return "rank-1 required";
    case ErrorKind::coarse_sampling: return "refine trajectory sampling";
    case ErrorKind::unnormalized: return "unnormalized input";
    case ErrorKind::quadrature: return "quadrature did not converge";
    case ErrorKind::config: return "configuration error";
    case ErrorKind::io: return "i/o error";
  }
  return "unknown error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace condensate
