#include "condensate/fft.hpp"

#include <fftw3.h>

#include <functional>
#include <mutex>
#include <numeric>

#include "condensate/error.hpp"

namespace condensate {
namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct FftPlan::Impl {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
  }
};

FftPlan::FftPlan(std::vector<int> shape) : impl_(std::make_unique<Impl>()), shape_(std::move(shape)) {
  if (shape_.empty()) fail(ErrorKind::invalid_argument, "FFT shape must be non-empty");
  size_ = std::accumulate(shape_.begin(), shape_.end(), std::size_t{1},
                          [](std::size_t a, int b) { return a * static_cast<std::size_t>(b); });
  std::vector<cplx> scratch(size_);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard lock(planner_mutex());
  impl_->fwd = fftw_plan_dft(static_cast<int>(shape_.size()), shape_.data(), buf, buf, FFTW_FORWARD, flags);
  impl_->bwd = fftw_plan_dft(static_cast<int>(shape_.size()), shape_.data(), buf, buf, FFTW_BACKWARD, flags);
  if (!impl_->fwd || !impl_->bwd) fail(ErrorKind::invalid_argument, "FFTW planning failed");
}

FftPlan::~FftPlan() = default;
FftPlan::FftPlan(FftPlan&&) noexcept = default;
FftPlan& FftPlan::operator=(FftPlan&&) noexcept = default;

void FftPlan::forward(std::span<cplx> data) const {
  if (data.size() != size_) fail(ErrorKind::grid_mismatch, "FFT buffer size mismatch");
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(impl_->fwd, buf, buf);
}

void FftPlan::inverse(std::span<cplx> data) const {
  if (data.size() != size_) fail(ErrorKind::grid_mismatch, "FFT buffer size mismatch");
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(impl_->bwd, buf, buf);
  const double scale = 1.0 / static_cast<double>(size_);
  for (auto& z : data) z *= scale;
}

struct SineTransform::Impl {
  fftw_plan plan = nullptr;
  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (plan) fftw_destroy_plan(plan);
  }
};

SineTransform::SineTransform(int n) : impl_(std::make_unique<Impl>()), n_(n) {
  if (n < 1) fail(ErrorKind::invalid_argument, "sine transform needs at least one point");
  std::vector<double> scratch(static_cast<std::size_t>(n));
  std::lock_guard lock(planner_mutex());
  impl_->plan = fftw_plan_r2r_1d(n, scratch.data(), scratch.data(), FFTW_RODFT00, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!impl_->plan) fail(ErrorKind::invalid_argument, "FFTW planning failed");
}

SineTransform::~SineTransform() = default;
SineTransform::SineTransform(SineTransform&&) noexcept = default;
SineTransform& SineTransform::operator=(SineTransform&&) noexcept = default;

void SineTransform::forward(std::span<double> data) const {
  if (data.size() != static_cast<std::size_t>(n_)) fail(ErrorKind::grid_mismatch, "DST buffer size mismatch");
  fftw_execute_r2r(impl_->plan, data.data(), data.data());
}

void SineTransform::inverse(std::span<double> data) const {
  forward(data);
  const double scale = 1.0 / (2.0 * (n_ + 1));
  for (auto& x : data) x *= scale;
}

}  // namespace condensate
