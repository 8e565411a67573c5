#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace condensate {

using cplx = std::complex<double>;

// Unnormalized multi-dimensional complex FFT (row-major, last axis fastest).
// The inverse is scaled by 1/size so forward followed by inverse is identity.
class FftPlan {
 public:
  explicit FftPlan(std::vector<int> shape);
  ~FftPlan();
  FftPlan(FftPlan&&) noexcept;
  FftPlan& operator=(FftPlan&&) noexcept;
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  void forward(std::span<cplx> data) const;
  void inverse(std::span<cplx> data) const;

  std::size_t size() const noexcept { return size_; }
  const std::vector<int>& shape() const noexcept { return shape_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::vector<int> shape_;
  std::size_t size_ = 0;
};

// Type-I discrete sine transform on n interior points. Applying it twice
// multiplies by 2(n+1); inverse() folds that factor in.
class SineTransform {
 public:
  explicit SineTransform(int n);
  ~SineTransform();
  SineTransform(SineTransform&&) noexcept;
  SineTransform& operator=(SineTransform&&) noexcept;
  SineTransform(const SineTransform&) = delete;
  SineTransform& operator=(const SineTransform&) = delete;

  void forward(std::span<double> data) const;
  void inverse(std::span<double> data) const;

  int size() const noexcept { return n_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int n_ = 0;
};

}  // namespace condensate
